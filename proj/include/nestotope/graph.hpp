#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <ranges>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace nestotope {

/// Subset of a ground set of at most 64 vertices, stored as a machine word.
class VertexSet {
public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
  VertexSet(std::initializer_list<int> members) {
    for (int v : members) insert(v);
  }

  static VertexSet singleton(int v) { return VertexSet(std::uint64_t{1} << v); }
  /// {0, ..., count-1}
  static VertexSet prefix(int count) {
    return VertexSet(count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1);
  }
  template <class Range>
  static VertexSet of(const Range& members) {
    VertexSet s;
    for (int v : members) s.insert(static_cast<int>(v));
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  bool contains(int v) const { return v >= 0 && v < 64 && ((bits_ >> v) & 1u); }
  /// Least member; the set must be nonempty.
  int min() const { return std::countr_zero(bits_); }
  int max() const { return 63 - std::countl_zero(bits_); }

  void insert(int v) {
    if (v < 0 || v >= 64) throw std::out_of_range("vertex label outside 0..63");
    bits_ |= std::uint64_t{1} << v;
  }
  void erase(int v) { bits_ &= ~(std::uint64_t{1} << v); }

  bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
  bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }

  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  /// Set difference.
  friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(VertexSet a, VertexSet b) = default;

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int v : members()) {
      if (!first) os << ',';
      os << v;
      first = false;
    }
    os << '}';
    return os.str();
  }

private:
  std::uint64_t bits_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, VertexSet s) { return os << s.to_string(); }

/// Canonical tube order: by cardinality, then lexicographically on the sorted member lists.
inline bool canonical_less(VertexSet a, VertexSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  auto ma = a.members(), mb = b.members();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

struct VertexSetHash {
  std::size_t operator()(VertexSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};

/// Finite simple graph on the vertices 0..n_vertices-1.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n_vertices) : adj_(check_count(n_vertices)) {}
  Graph(int n_vertices, const std::vector<std::pair<int, int>>& edges) : Graph(n_vertices) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  static Graph path(int k) {
    Graph g(k);
    for (int i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1);
    return g;
  }
  static Graph cycle(int k) {
    if (k < 3) throw std::invalid_argument("cycle graph needs at least 3 vertices");
    Graph g = path(k);
    g.add_edge(k - 1, 0);
    return g;
  }
  static Graph complete(int k) {
    Graph g(k);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) g.add_edge(i, j);
    return g;
  }
  /// Star with centre 0 and leaves 1..k-1.
  static Graph star(int k) {
    Graph g(k);
    for (int i = 1; i < k; ++i) g.add_edge(0, i);
    return g;
  }

  void add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_vertices() || v >= n_vertices())
      throw std::invalid_argument("edge endpoint outside the vertex range");
    if (u == v) throw std::invalid_argument("loops are not allowed");
    if (adjacent(u, v)) throw std::invalid_argument("multiple edges are not allowed");
    adj_[u].insert(v);
    adj_[v].insert(u);
  }

  int n_vertices() const { return static_cast<int>(adj_.size()); }
  VertexSet vertices() const { return VertexSet::prefix(n_vertices()); }
  VertexSet neighbours(int v) const { return adj_.at(v); }
  bool adjacent(int u, int v) const { return adj_.at(u).contains(v); }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_vertices(); ++u)
      for (int v : adj_[u].members())
        if (u < v) out.emplace_back(u, v);
    return out;
  }
  int edge_count() const {
    int c = 0;
    for (auto s : adj_) c += s.size();
    return c / 2;
  }

  bool is_connected() const { return n_vertices() > 0 && component_of(0, vertices()) == vertices(); }

  /// Vertices reachable from `start` inside `within`.
  VertexSet component_of(int start, VertexSet within) const {
    VertexSet seen = VertexSet::singleton(start);
    VertexSet frontier = seen;
    while (!frontier.empty()) {
      VertexSet next;
      for (int v : frontier.members()) next = next | (adj_[v] & within);
      frontier = next - seen;
      seen = seen | next;
    }
    return seen;
  }

  /// True when the edge sets coincide with the path 0-1-...-n.
  bool is_standard_path() const {
    return edge_count() == n_vertices() - 1 &&
           std::ranges::all_of(std::views::iota(0, std::max(0, n_vertices() - 1)),
                               [&](int i) { return adjacent(i, i + 1); });
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
  static std::size_t check_count(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("graph must have between 1 and 64 vertices");
    return static_cast<std::size_t>(n);
  }

  std::vector<VertexSet> adj_;
};

inline bool is_connected_induced(const Graph& g, VertexSet s) {
  if (s.empty()) throw std::invalid_argument("empty subset has no connectivity status");
  if (!s.subset_of(g.vertices())) throw std::invalid_argument("subset is not contained in the vertex set");
  return g.component_of(s.min(), s) == s;
}

/// Building set with its members in canonical order.
struct BuildingSet {
  VertexSet ground;
  std::vector<VertexSet> tubes;  // canonical order; contains `ground` iff connected

  bool connected() const { return !tubes.empty() && tubes.back() == ground; }
  bool contains(VertexSet s) const { return lookup_.contains(s); }
  int dimension() const { return ground.size() - 1; }
  /// Members other than the ground set; these index the facets.
  std::vector<VertexSet> proper_tubes() const {
    std::vector<VertexSet> out;
    for (auto t : tubes)
      if (t != ground) out.push_back(t);
    return out;
  }

  static BuildingSet from_members(VertexSet ground, std::vector<VertexSet> members) {
    std::sort(members.begin(), members.end(), canonical_less);
    members.erase(std::unique(members.begin(), members.end()), members.end());
    BuildingSet b;
    b.ground = ground;
    b.tubes = std::move(members);
    b.lookup_.insert(b.tubes.begin(), b.tubes.end());
    return b;
  }

private:
  std::unordered_set<VertexSet, VertexSetHash> lookup_;
};

/// All nonempty vertex subsets inducing a connected subgraph, found by growing
/// connected sets one neighbour at a time.
inline BuildingSet graph_building_set(const Graph& g) {
  std::unordered_set<VertexSet, VertexSetHash> seen;
  std::vector<VertexSet> stack;
  for (int v = 0; v < g.n_vertices(); ++v) {
    seen.insert(VertexSet::singleton(v));
    stack.push_back(VertexSet::singleton(v));
  }
  while (!stack.empty()) {
    VertexSet s = stack.back();
    stack.pop_back();
    VertexSet boundary;
    for (int v : s.members()) boundary = boundary | g.neighbours(v);
    boundary = boundary - s;
    for (int v : boundary.members()) {
      VertexSet t = s | VertexSet::singleton(v);
      if (seen.insert(t).second) stack.push_back(t);
    }
  }
  return BuildingSet::from_members(g.vertices(), {seen.begin(), seen.end()});
}

/// Checks the two building-set axioms by an exhaustive pair scan.
inline bool validate_building_set(VertexSet ground, const std::vector<VertexSet>& tubes) {
  std::unordered_set<VertexSet, VertexSetHash> members(tubes.begin(), tubes.end());
  for (auto t : tubes)
    if (t.empty() || !t.subset_of(ground)) return false;
  for (int v : ground.members())
    if (!members.contains(VertexSet::singleton(v))) return false;
  for (std::size_t i = 0; i < tubes.size(); ++i)
    for (std::size_t j = i + 1; j < tubes.size(); ++j)
      if (tubes[i].intersects(tubes[j]) && !members.contains(tubes[i] | tubes[j])) return false;
  return true;
}

struct SubgraphComponent {
  Graph graph;              // relabelled 0..k-1
  std::vector<int> labels;  // labels[local] = vertex of the parent graph, ascending
};

/// Connected components of g - a, each relabelled by increasing parent label.
inline std::vector<SubgraphComponent> components_minus_vertex(const Graph& g, int a) {
  if (!g.vertices().contains(a)) throw std::invalid_argument("vertex is not in the graph");
  std::vector<SubgraphComponent> out;
  VertexSet rest = g.vertices() - VertexSet::singleton(a);
  while (!rest.empty()) {
    VertexSet comp = g.component_of(rest.min(), rest);
    rest = rest - comp;
    SubgraphComponent c;
    c.labels = comp.members();
    c.graph = Graph(static_cast<int>(c.labels.size()));
    for (std::size_t i = 0; i < c.labels.size(); ++i)
      for (std::size_t j = i + 1; j < c.labels.size(); ++j)
        if (g.adjacent(c.labels[i], c.labels[j])) c.graph.add_edge(static_cast<int>(i), static_cast<int>(j));
    out.push_back(std::move(c));
  }
  return out;
}

/// Adjacency code of `g` relabelled by `perm` (perm[old] = new); used for canonical forms.
inline std::uint64_t adjacency_code(const Graph& g, const std::vector<int>& perm) {
  std::uint64_t code = 0;
  for (auto [u, v] : g.edges()) {
    int a = std::min(perm[u], perm[v]), b = std::max(perm[u], perm[v]);
    code |= std::uint64_t{1} << (b * (b - 1) / 2 + a);
  }
  return code;
}

/// Every labelled connected graph on k vertices (k <= 7).
inline std::vector<Graph> all_connected_graphs(int k) {
  if (k < 1 || k > 7) throw std::invalid_argument("graph enumeration supports 1..7 vertices");
  std::vector<std::pair<int, int>> slots;
  for (int b = 1; b < k; ++b)
    for (int a = 0; a < b; ++a) slots.emplace_back(a, b);
  std::vector<Graph> out;
  const std::uint64_t total = std::uint64_t{1} << slots.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Graph g(k);
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1u) g.add_edge(slots[i].first, slots[i].second);
    if (g.is_connected()) out.push_back(std::move(g));
  }
  return out;
}

/// One representative per isomorphism class of connected graphs on k vertices (k <= 6),
/// chosen as the graph with the least adjacency code in its class.
inline std::vector<Graph> connected_graphs_up_to_isomorphism(int k) {
  if (k > 6) throw std::invalid_argument("isomorphism classes are enumerated for at most 6 vertices");
  std::vector<int> perm(k);
  std::unordered_set<std::uint64_t> classes;
  std::vector<Graph> out;
  for (const Graph& g : all_connected_graphs(k)) {
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do {
      best = std::min(best, adjacency_code(g, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!classes.insert(best).second) continue;
    Graph canon(k);
    for (int b = 1; b < k; ++b)
      for (int a = 0; a < b; ++a)
        if ((best >> (b * (b - 1) / 2 + a)) & 1u) canon.add_edge(a, b);
    out.push_back(std::move(canon));
  }
  return out;
}

inline bool isomorphic(const Graph& g, const Graph& h) {
  if (g.n_vertices() != h.n_vertices() || g.edge_count() != h.edge_count()) return false;
  std::vector<int> perm(g.n_vertices()), id(g.n_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::iota(id.begin(), id.end(), 0);
  const std::uint64_t target = adjacency_code(h, id);
  do {
    if (adjacency_code(g, perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace nestotope
