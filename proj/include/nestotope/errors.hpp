#pragma once

#include <stdexcept>
#include <string>

namespace nestotope {

/// A computation was refused because it would exceed a configured size limit.
class BudgetExceeded : public std::runtime_error {
public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nestotope
