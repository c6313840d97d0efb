#pragma once

// Undirected simple graphs, the generator families used by the search
// experiments, named target vertices and the usual distance metrics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sqws/error.hpp"

namespace sqws {

using Vertex = std::size_t;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n) : adj_(n) {}

  Graph(std::size_t n, std::span<const Edge> edges) : adj_(n) {
    for (const auto& e : edges) add_edge(e.u, e.v);
  }

  std::size_t size() const noexcept { return adj_.size(); }

  std::size_t num_edges() const noexcept { return num_edges_; }

  // Returns false when the edge was already present.
  bool add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) {
      throw ParameterError("self-loop on vertex " + std::to_string(u));
    }
    if (has_edge(u, v)) return false;
    insert_sorted(adj_[u], v);
    insert_sorted(adj_[v], u);
    ++num_edges_;
    return true;
  }

  bool remove_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (!has_edge(u, v)) return false;
    adj_[u].erase(std::lower_bound(adj_[u].begin(), adj_[u].end(), v));
    adj_[v].erase(std::lower_bound(adj_[v].begin(), adj_[v].end(), u));
    --num_edges_;
    return true;
  }

  bool has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  std::size_t degree(Vertex v) const {
    check_vertex(v);
    return adj_[v].size();
  }

  std::span<const Vertex> neighbors(Vertex v) const {
    check_vertex(v);
    return adj_[v];
  }

  // Sorted (u < v, lexicographic).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (Vertex u = 0; u < size(); ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.push_back({u, v});
      }
    }
    return out;
  }

  Eigen::MatrixXd adjacency() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Vertex u = 0; u < size(); ++u) {
      for (Vertex v : adj_[u]) a(Eigen::Index(u), Eigen::Index(v)) = 1.0;
    }
    return a;
  }

  Eigen::VectorXd degrees() const {
    Eigen::VectorXd d(static_cast<Eigen::Index>(size()));
    for (Vertex v = 0; v < size(); ++v) {
      d(Eigen::Index(v)) = static_cast<double>(adj_[v].size());
    }
    return d;
  }

  // L = D - A
  Eigen::MatrixXd laplacian() const {
    Eigen::MatrixXd l = -adjacency();
    l.diagonal() += degrees();
    return l;
  }

  // Role tags ("center", "shared", ...) attached by the generators.
  void set_label(const std::string& name, Vertex v) {
    check_vertex(v);
    labels_[name] = v;
  }

  std::optional<Vertex> label(const std::string& name) const {
    auto it = labels_.find(name);
    if (it == labels_.end()) return std::nullopt;
    return it->second;
  }

  const std::map<std::string, Vertex>& labels() const noexcept {
    return labels_;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adj_ == b.adj_;
  }

 private:
  void check_vertex(Vertex v) const {
    if (v >= size()) {
      throw IndexError("vertex " + std::to_string(v) + " out of range [0, " +
                       std::to_string(size()) + ")");
    }
  }

  static void insert_sorted(std::vector<Vertex>& list, Vertex v) {
    list.insert(std::upper_bound(list.begin(), list.end(), v), v);
  }

  std::vector<std::vector<Vertex>> adj_;
  std::size_t num_edges_ = 0;
  std::map<std::string, Vertex> labels_;
};

// ---------------------------------------------------------------------------
// Metrics

// Breadth-first distances from `source`; unreachable vertices get SIZE_MAX.
inline std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
  constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.size(), kUnreached);
  if (source >= g.size()) {
    throw IndexError("vertex " + std::to_string(source) + " out of range");
  }
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex v : g.neighbors(u)) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

inline bool is_connected(const Graph& g) {
  if (g.size() == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::size_t d) {
    return d == std::numeric_limits<std::size_t>::max();
  });
}

inline double density(const Graph& g) {
  const double n = static_cast<double>(g.size());
  if (g.size() < 2) throw ParameterError("density needs at least 2 vertices");
  return 2.0 * static_cast<double>(g.num_edges()) / (n * (n - 1.0));
}

inline double degree_centrality(const Graph& g, Vertex v) {
  if (v >= g.size()) {
    throw IndexError("vertex " + std::to_string(v) + " out of range");
  }
  if (g.size() < 2) {
    throw ParameterError("degree centrality needs at least 2 vertices");
  }
  return static_cast<double>(g.degree(v)) / static_cast<double>(g.size() - 1);
}

inline std::size_t eccentricity(const Graph& g, Vertex v) {
  const auto dist = bfs_distances(g, v);
  const auto worst = *std::max_element(dist.begin(), dist.end());
  if (worst == std::numeric_limits<std::size_t>::max()) {
    throw ConnectivityError("graph is disconnected; eccentricity undefined");
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Seeded randomness. The standard distributions are implementation-defined,
// so bounded draws are done by hand to keep outputs identical across
// standard libraries.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw ParameterError("empty range");
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Families

enum class Family {
  complete,
  cycle,
  path,
  hypercube,
  grid,
  star,
  wheel,
  tadpole,
  lollipop,
  perfect_binary_tree,
  ring_lattice,
  watts_strogatz,
  glued_small_world,
  maze,
};

inline constexpr std::pair<Family, std::string_view> kFamilyNames[] = {
    {Family::complete, "complete"},
    {Family::cycle, "cycle"},
    {Family::path, "path"},
    {Family::hypercube, "hypercube"},
    {Family::grid, "grid"},
    {Family::star, "star"},
    {Family::wheel, "wheel"},
    {Family::tadpole, "tadpole"},
    {Family::lollipop, "lollipop"},
    {Family::perfect_binary_tree, "perfect_binary_tree"},
    {Family::ring_lattice, "ring_lattice"},
    {Family::watts_strogatz, "watts_strogatz"},
    {Family::glued_small_world, "glued_small_world"},
    {Family::maze, "maze"},
};

inline std::string_view to_string(Family f) {
  for (const auto& [fam, name] : kFamilyNames) {
    if (fam == f) return name;
  }
  return "unknown";
}

inline Family parse_family(std::string_view name) {
  for (const auto& [fam, fname] : kFamilyNames) {
    if (fname == name) return fam;
  }
  throw ParameterError("unknown graph family '" + std::string(name) + "'");
}

// Parameters per family:
//   complete, cycle, path, star, wheel: n = vertex count
//   hypercube: d = dimension;  perfect_binary_tree: d = depth
//   grid, maze: rows x cols
//   tadpole: m-cycle plus an n-vertex tail;  lollipop: K_m plus n-vertex tail
//   ring_lattice: n, k;  watts_strogatz: n, k, p
//   glued_small_world: n = component size (22 by default)
struct FamilySpec {
  Family family = Family::complete;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  std::size_t k = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double p = 0.0;
  std::uint64_t seed = 0;

  bool randomized() const {
    return family == Family::watts_strogatz ||
           family == Family::glued_small_world || family == Family::maze;
  }

  // Short identifier such as "tadpole_m32_n32"; seeds are recorded separately.
  std::string id() const {
    std::ostringstream os;
    os << to_string(family);
    switch (family) {
      case Family::hypercube:
      case Family::perfect_binary_tree:
        os << "_d" << d;
        break;
      case Family::grid:
      case Family::maze:
        os << "_" << rows << "x" << cols;
        break;
      case Family::tadpole:
      case Family::lollipop:
        os << "_m" << m << "_n" << n;
        break;
      case Family::ring_lattice:
        os << "_n" << n << "_k" << k;
        break;
      case Family::watts_strogatz:
        os << "_n" << n << "_k" << k << "_p" << p;
        break;
      default:
        os << "_n" << n;
    }
    return os.str();
  }

  static FamilySpec complete(std::size_t n) { return {.family = Family::complete, .n = n}; }
  static FamilySpec cycle(std::size_t n) { return {.family = Family::cycle, .n = n}; }
  static FamilySpec path(std::size_t n) { return {.family = Family::path, .n = n}; }
  static FamilySpec star(std::size_t n) { return {.family = Family::star, .n = n}; }
  static FamilySpec wheel(std::size_t n) { return {.family = Family::wheel, .n = n}; }
  static FamilySpec hypercube(std::size_t d) { return {.family = Family::hypercube, .d = d}; }
  static FamilySpec perfect_binary_tree(std::size_t d) {
    return {.family = Family::perfect_binary_tree, .d = d};
  }
  static FamilySpec grid(std::size_t rows, std::size_t cols) {
    return {.family = Family::grid, .rows = rows, .cols = cols};
  }
  static FamilySpec maze(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    return {.family = Family::maze, .rows = rows, .cols = cols, .seed = seed};
  }
  static FamilySpec tadpole(std::size_t m, std::size_t n) {
    return {.family = Family::tadpole, .n = n, .m = m};
  }
  static FamilySpec lollipop(std::size_t m, std::size_t n) {
    return {.family = Family::lollipop, .n = n, .m = m};
  }
  static FamilySpec ring_lattice(std::size_t n, std::size_t k) {
    return {.family = Family::ring_lattice, .n = n, .k = k};
  }
  static FamilySpec watts_strogatz(std::size_t n, std::size_t k, double p,
                                   std::uint64_t seed) {
    return {.family = Family::watts_strogatz, .n = n, .k = k, .p = p, .seed = seed};
  }
  static FamilySpec glued_small_world(std::uint64_t seed, std::size_t component = 22) {
    return {.family = Family::glued_small_world, .n = component, .seed = seed};
  }
};

namespace detail {

inline void require(bool ok, const FamilySpec& spec, const std::string& what) {
  if (!ok) {
    throw ParameterError(std::string(to_string(spec.family)) + ": " + what);
  }
}

inline void add_ring(Graph& g, std::size_t offset, std::size_t n,
                     std::size_t half) {
  half = std::min(half, n / 2);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t j = 1; j <= half; ++j) {
      g.add_edge(offset + u, offset + (u + j) % n);
    }
  }
}

inline void add_complete(Graph& g, std::size_t offset, std::size_t n) {
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(offset + u, offset + v);
  }
}

// Single-endpoint rewiring over the ring lattice, as in the original
// Watts-Strogatz construction: each lattice edge (u, u+j) is, with
// probability p, replaced by (u, w) for a uniformly drawn w that is neither
// u nor an existing neighbour.
inline void add_watts_strogatz(Graph& g, std::size_t offset, std::size_t n,
                               std::size_t k, double p, Rng& rng) {
  const std::size_t half = k / 2;
  add_ring(g, offset, n, half);
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      const Vertex a = offset + u;
      const Vertex b = offset + (u + j) % n;
      if (rng.uniform() >= p) continue;
      if (!g.has_edge(a, b)) continue;
      // Saturated vertex: nothing to rewire to.
      std::size_t local_degree = 0;
      for (Vertex w : g.neighbors(a)) {
        if (w >= offset && w < offset + n) ++local_degree;
      }
      if (local_degree >= n - 1) continue;
      Vertex w;
      do {
        w = offset + rng.below(n);
      } while (w == a || g.has_edge(a, w));
      g.remove_edge(a, b);
      g.add_edge(a, w);
    }
  }
}

inline bool component_connected(const Graph& g, std::size_t offset,
                                std::size_t n) {
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack{offset};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (Vertex v : g.neighbors(u)) {
      if (v < offset || v >= offset + n || seen[v - offset]) continue;
      seen[v - offset] = true;
      ++count;
      stack.push_back(v);
    }
  }
  return count == n;
}

// Retries with the same stream until the component is connected.
inline Graph connected_watts_strogatz(std::size_t n, std::size_t k, double p,
                                      Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Graph g(n);
    add_watts_strogatz(g, 0, n, k, p, rng);
    if (component_connected(g, 0, n)) return g;
  }
  throw ParameterError("watts_strogatz: no connected instance after 1000 draws");
}

inline Vertex highest_degree(const Graph& g, std::size_t offset,
                             std::size_t n) {
  Vertex best = offset;
  for (Vertex v = offset; v < offset + n; ++v) {
    if (g.degree(v) > g.degree(best)) best = v;
  }
  return best;
}

}  // namespace detail

inline Graph generate(const FamilySpec& spec) {
  using detail::require;
  switch (spec.family) {
    case Family::complete: {
      require(spec.n >= 2, spec, "n >= 2 required");
      Graph g(spec.n);
      detail::add_complete(g, 0, spec.n);
      return g;
    }
    case Family::cycle: {
      require(spec.n >= 3, spec, "n >= 3 required");
      Graph g(spec.n);
      detail::add_ring(g, 0, spec.n, 1);
      return g;
    }
    case Family::path: {
      require(spec.n >= 2, spec, "n >= 2 required");
      Graph g(spec.n);
      for (Vertex v = 0; v + 1 < spec.n; ++v) g.add_edge(v, v + 1);
      g.set_label("border", 0);
      g.set_label("center", spec.n / 2);
      return g;
    }
    case Family::hypercube: {
      require(spec.d >= 1 && spec.d <= 20, spec, "1 <= d <= 20 required");
      const std::size_t n = std::size_t{1} << spec.d;
      Graph g(n);
      for (Vertex v = 0; v < n; ++v) {
        for (std::size_t b = 0; b < spec.d; ++b) {
          const Vertex w = v ^ (std::size_t{1} << b);
          if (v < w) g.add_edge(v, w);
        }
      }
      return g;
    }
    case Family::grid: {
      require(spec.rows >= 1 && spec.cols >= 1 && spec.rows * spec.cols >= 2,
              spec, "rows, cols >= 1 and at least 2 cells required");
      Graph g(spec.rows * spec.cols);
      for (std::size_t r = 0; r < spec.rows; ++r) {
        for (std::size_t c = 0; c < spec.cols; ++c) {
          const Vertex v = r * spec.cols + c;
          if (c + 1 < spec.cols) g.add_edge(v, v + 1);
          if (r + 1 < spec.rows) g.add_edge(v, v + spec.cols);
        }
      }
      g.set_label("border", 0);
      g.set_label("center", (spec.rows / 2) * spec.cols + spec.cols / 2);
      return g;
    }
    case Family::star: {
      require(spec.n >= 3, spec, "n >= 3 required (center plus two leaves)");
      Graph g(spec.n);
      for (Vertex v = 1; v < spec.n; ++v) g.add_edge(0, v);
      g.set_label("center", 0);
      g.set_label("border", 1);
      return g;
    }
    case Family::wheel: {
      require(spec.n >= 4, spec, "n >= 4 required");
      Graph g(spec.n);
      const std::size_t rim = spec.n - 1;
      for (Vertex v = 1; v < spec.n; ++v) {
        g.add_edge(0, v);
        g.add_edge(v, 1 + v % rim);
      }
      g.set_label("center", 0);
      g.set_label("border", 1);
      return g;
    }
    case Family::tadpole: {
      require(spec.m >= 3 && spec.n >= 1, spec, "m >= 3 and n >= 1 required");
      Graph g(spec.m + spec.n);
      detail::add_ring(g, 0, spec.m, 1);
      g.add_edge(0, spec.m);
      for (Vertex v = spec.m; v + 1 < spec.m + spec.n; ++v) g.add_edge(v, v + 1);
      g.set_label("shared", 0);
      g.set_label("cycle", spec.m / 2);
      g.set_label("path", spec.m + spec.n - 1);
      return g;
    }
    case Family::lollipop: {
      require(spec.m >= 2 && spec.n >= 1, spec, "m >= 2 and n >= 1 required");
      Graph g(spec.m + spec.n);
      detail::add_complete(g, 0, spec.m);
      g.add_edge(0, spec.m);
      for (Vertex v = spec.m; v + 1 < spec.m + spec.n; ++v) g.add_edge(v, v + 1);
      g.set_label("shared", 0);
      g.set_label("complete", spec.m - 1);
      g.set_label("path", spec.m + spec.n - 1);
      return g;
    }
    case Family::perfect_binary_tree: {
      require(spec.d >= 1 && spec.d <= 20, spec, "1 <= d <= 20 required");
      const std::size_t n = (std::size_t{1} << (spec.d + 1)) - 1;
      Graph g(n);
      for (Vertex v = 1; v < n; ++v) g.add_edge((v - 1) / 2, v);
      g.set_label("root", 0);
      g.set_label("leaf", (std::size_t{1} << spec.d) - 1);
      return g;
    }
    case Family::ring_lattice: {
      require(spec.n >= 3, spec, "n >= 3 required");
      require(spec.k >= 2, spec, "k >= 2 required");
      Graph g(spec.n);
      detail::add_ring(g, 0, spec.n, spec.k / 2);
      return g;
    }
    case Family::watts_strogatz: {
      require(spec.n >= 3, spec, "n >= 3 required");
      require(spec.k >= 2 && spec.k < spec.n, spec, "2 <= k < n required");
      require(spec.p >= 0.0 && spec.p <= 1.0, spec, "p must lie in [0, 1]");
      Rng rng(spec.seed);
      return detail::connected_watts_strogatz(spec.n, spec.k, spec.p, rng);
    }
    case Family::glued_small_world: {
      const std::size_t c = spec.n == 0 ? 22 : spec.n;
      require(c >= 11, spec, "component size >= 11 required");
      constexpr std::size_t kDegrees[3] = {10, 4, 3};
      constexpr double kRewire[3] = {0.1, 0.5, 0.8};
      constexpr const char* kNames[3] = {"HC", "IC", "LC"};
      Rng rng(spec.seed);
      Graph g(3 * c);
      for (std::size_t part = 0; part < 3; ++part) {
        const Graph sub =
            detail::connected_watts_strogatz(c, kDegrees[part], kRewire[part], rng);
        for (const auto& e : sub.edges()) {
          g.add_edge(part * c + e.u, part * c + e.v);
        }
      }
      // Chain the components: 1 <-> 2 and 2 <-> 3.
      for (std::size_t part = 0; part < 2; ++part) {
        const Vertex a = part * c + rng.below(c);
        const Vertex b = (part + 1) * c + rng.below(c);
        g.add_edge(a, b);
      }
      for (std::size_t part = 0; part < 3; ++part) {
        g.set_label(kNames[part], detail::highest_degree(g, part * c, c));
      }
      return g;
    }
    case Family::maze: {
      require(spec.rows >= 1 && spec.cols >= 1 && spec.rows * spec.cols >= 2,
              spec, "rows, cols >= 1 and at least 2 cells required");
      const std::size_t rows = spec.rows;
      const std::size_t cols = spec.cols;
      Graph g(rows * cols);
      Rng rng(spec.seed);
      std::vector<bool> visited(rows * cols, false);
      std::vector<Vertex> stack{0};
      visited[0] = true;
      std::vector<Vertex> options;
      while (!stack.empty()) {
        const Vertex cell = stack.back();
        const std::size_t r = cell / cols;
        const std::size_t c = cell % cols;
        options.clear();
        if (r > 0 && !visited[cell - cols]) options.push_back(cell - cols);
        if (r + 1 < rows && !visited[cell + cols]) options.push_back(cell + cols);
        if (c > 0 && !visited[cell - 1]) options.push_back(cell - 1);
        if (c + 1 < cols && !visited[cell + 1]) options.push_back(cell + 1);
        if (options.empty()) {
          stack.pop_back();
          continue;
        }
        const Vertex next = options[rng.below(options.size())];
        g.add_edge(cell, next);
        visited[next] = true;
        stack.push_back(next);
      }
      const auto dist = bfs_distances(g, 0);
      const auto far = std::max_element(dist.begin(), dist.end());
      g.set_label("start", 0);
      g.set_label("exit", static_cast<Vertex>(far - dist.begin()));
      return g;
    }
  }
  throw ParameterError("unhandled graph family");
}

// ---------------------------------------------------------------------------
// Target selection

struct TargetSelector {
  enum class Mode { index, named };

  Mode mode = Mode::index;
  Vertex index = 0;
  std::string name;
  // Depth d_m for the "depth" role of perfect binary trees.
  std::optional<std::size_t> depth;

  static TargetSelector at(Vertex v) { return {Mode::index, v, {}, {}}; }
  static TargetSelector named(std::string tag) {
    return {Mode::named, 0, std::move(tag), {}};
  }
  static TargetSelector at_depth(std::size_t d) {
    return {Mode::named, 0, "depth", d};
  }

  // "v3", "center", "depth3"
  std::string id() const {
    if (mode == Mode::index) return "v" + std::to_string(index);
    if (depth) return name + std::to_string(*depth);
    return name;
  }

  // Inverse of id(); bare integers are accepted as indices.
  static TargetSelector parse(std::string_view text) {
    if (text.empty()) throw SelectorError("empty target selector");
    auto all_digits = [](std::string_view s) {
      return !s.empty() && std::all_of(s.begin(), s.end(),
                                       [](char ch) { return ch >= '0' && ch <= '9'; });
    };
    if (all_digits(text)) return at(std::stoull(std::string(text)));
    if (text.front() == 'v' && all_digits(text.substr(1))) {
      return at(std::stoull(std::string(text.substr(1))));
    }
    if (text.starts_with("depth")) {
      auto rest = text.substr(5);
      if (!rest.empty() && rest.front() == ':') rest.remove_prefix(1);
      if (!all_digits(rest)) {
        throw SelectorError("depth selector needs a depth, e.g. depth3");
      }
      return at_depth(std::stoull(std::string(rest)));
    }
    return named(std::string(text));
  }

  friend bool operator==(const TargetSelector&, const TargetSelector&) = default;
};

inline Vertex resolve_target(const Graph& g, const TargetSelector& sel) {
  if (sel.mode == TargetSelector::Mode::index) {
    if (sel.index >= g.size()) {
      throw SelectorError("target index " + std::to_string(sel.index) +
                          " out of range for graph of size " +
                          std::to_string(g.size()));
    }
    return sel.index;
  }
  if (sel.name == "depth" && sel.depth) {
    // Leftmost vertex at depth d_m under heap numbering; only meaningful for
    // perfect binary trees, which carry a "root" label.
    if (!g.label("root") || !g.label("leaf")) {
      throw SelectorError("depth selector requires a perfect binary tree");
    }
    const Vertex v = (std::size_t{1} << *sel.depth) - 1;
    if (v > *g.label("leaf")) {
      throw SelectorError("depth " + std::to_string(*sel.depth) +
                          " exceeds tree depth");
    }
    return v;
  }
  if (auto v = g.label(sel.name)) return *v;
  std::string known;
  for (const auto& [name, _] : g.labels()) known += (known.empty() ? "" : ", ") + name;
  throw SelectorError("unknown target tag '" + sel.name + "' (available: " +
                      (known.empty() ? "none; use a vertex index" : known) + ")");
}

// ---------------------------------------------------------------------------
// Ring-lattice metric profile

struct RingLatticeMetrics {
  std::size_t k;
  std::size_t eccentricity;
  double degree_centrality;
};

inline std::vector<RingLatticeMetrics> ring_lattice_profile(
    std::size_t n, std::span<const std::size_t> k_values) {
  std::vector<RingLatticeMetrics> out;
  out.reserve(k_values.size());
  for (std::size_t k : k_values) {
    const Graph g = generate(FamilySpec::ring_lattice(n, k));
    out.push_back({k, eccentricity(g, 0), degree_centrality(g, 0)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edge-list text format:
//   n
//   i j        (one per edge, i < j, sorted)
//   # label v name

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  os << g.size() << '\n';
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
  for (const auto& [name, v] : g.labels()) {
    os << "# label " << v << ' ' << name << '\n';
  }
  return os.str();
}

inline Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Graph> g;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (line.front() == '#') {
      std::string hash, kind, name;
      Vertex v;
      fields >> hash >> kind;
      if (kind != "label") continue;
      if (!(fields >> v >> name) || !g) {
        throw InputError("edge list line " + std::to_string(lineno) +
                         ": malformed label");
      }
      g->set_label(name, v);
      continue;
    }
    if (!g) {
      std::size_t n;
      if (!(fields >> n)) {
        throw InputError("edge list: first line must be the vertex count");
      }
      g.emplace(n);
      continue;
    }
    Vertex u, v;
    if (!(fields >> u >> v)) {
      throw InputError("edge list line " + std::to_string(lineno) +
                       ": expected 'i j'");
    }
    try {
      g->add_edge(u, v);
    } catch (const Error& e) {
      throw InputError("edge list line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!g) throw InputError("edge list is empty");
  return *std::move(g);
}

}  // namespace sqws
