#include "qdom/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <deque>
#include <sstream>

namespace qdom {

int set_size(VertexSet s) { return std::popcount(s); }

std::vector<int> set_to_vector(VertexSet s) {
  std::vector<int> out;
  while (s) {
    int v = std::countr_zero(s);
    out.push_back(v);
    s &= s - 1;
  }
  return out;
}

Graph Graph::build(int n, std::span<const std::pair<int, int>> edges) {
  if (n < 1 || n > kMaxVertices)
    throw Error(ErrorCode::OutOfRange,
                "vertex count must be in [1, 64], got " + std::to_string(n));
  Graph g;
  g.n_ = n;
  g.adj_.assign(static_cast<size_t>(n), 0);
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw Error(ErrorCode::OutOfRange, "edge endpoint out of range: (" +
                                             std::to_string(i) + "," +
                                             std::to_string(j) + ")");
    if (i == j)
      throw Error(ErrorCode::SelfLoop, "self loop at " + std::to_string(i));
    if (g.has_edge(i, j))
      throw Error(ErrorCode::DuplicateEdge, "duplicate edge (" +
                                                std::to_string(i) + "," +
                                                std::to_string(j) + ")");
    g.adj_[static_cast<size_t>(i)] |= VertexSet{1} << j;
    g.adj_[static_cast<size_t>(j)] |= VertexSet{1} << i;
    ++g.m_;
  }
  return g;
}

Graph Graph::build(int n, std::initializer_list<std::pair<int, int>> edges) {
  return build(n, std::span<const std::pair<int, int>>(edges.begin(),
                                                       edges.size()));
}

int Graph::degree(int v) const {
  return std::popcount(adj_[static_cast<size_t>(v)]);
}

bool Graph::has_edge(int u, int v) const {
  return set_contains(adj_[static_cast<size_t>(u)], v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<size_t>(m_));
  for (int i = 0; i < n_; ++i)
    for (int j : set_to_vector(adj_[static_cast<size_t>(i)] &
                               ~((VertexSet{2} << i) - 1)))
      out.emplace_back(i, j);
  return out;
}

Graph Graph::add_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw Error(ErrorCode::OutOfRange, "add_edge endpoint out of range");
  if (u == v) throw Error(ErrorCode::SelfLoop, "add_edge self loop");
  if (has_edge(u, v))
    throw Error(ErrorCode::EdgePresent, "edge (" + std::to_string(u) + "," +
                                            std::to_string(v) +
                                            ") already present");
  Graph g = *this;
  g.adj_[static_cast<size_t>(u)] |= VertexSet{1} << v;
  g.adj_[static_cast<size_t>(v)] |= VertexSet{1} << u;
  ++g.m_;
  return g;
}

Graph Graph::delete_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw Error(ErrorCode::OutOfRange, "delete_edge endpoint out of range");
  if (!has_edge(u, v))
    throw Error(ErrorCode::EdgeAbsent, "edge (" + std::to_string(u) + "," +
                                           std::to_string(v) + ") absent");
  Graph g = *this;
  g.adj_[static_cast<size_t>(u)] &= ~(VertexSet{1} << v);
  g.adj_[static_cast<size_t>(v)] &= ~(VertexSet{1} << u);
  --g.m_;
  return g;
}

Graph::VertexDeletion Graph::delete_vertices(VertexSet drop) const {
  drop &= vertices();
  VertexSet keep = vertices() & ~drop;
  int k = std::popcount(keep);
  if (k == 0)
    throw Error(ErrorCode::EmptyResult, "deleting every vertex");
  std::vector<int> index_map(static_cast<size_t>(n_), -1);
  int next = 0;
  for (int v = 0; v < n_; ++v)
    if (set_contains(keep, v)) index_map[static_cast<size_t>(v)] = next++;
  Graph g;
  g.n_ = k;
  g.adj_.assign(static_cast<size_t>(k), 0);
  for (int v = 0; v < n_; ++v) {
    if (!set_contains(keep, v)) continue;
    for (int w : set_to_vector(adj_[static_cast<size_t>(v)] & keep)) {
      if (w <= v) continue;
      int a = index_map[static_cast<size_t>(v)];
      int b = index_map[static_cast<size_t>(w)];
      g.adj_[static_cast<size_t>(a)] |= VertexSet{1} << b;
      g.adj_[static_cast<size_t>(b)] |= VertexSet{1} << a;
      ++g.m_;
    }
  }
  return {std::move(g), std::move(index_map)};
}

Graph Graph::permuted(std::span<const int> perm) const {
  Graph g;
  g.n_ = n_;
  g.m_ = m_;
  g.adj_.assign(static_cast<size_t>(n_), 0);
  for (int v = 0; v < n_; ++v)
    for (int w : set_to_vector(adj_[static_cast<size_t>(v)]))
      g.adj_[static_cast<size_t>(perm[static_cast<size_t>(v)])] |=
          VertexSet{1} << perm[static_cast<size_t>(w)];
  return g;
}

Coalescence coalesce(const Graph& g1, int v1, const Graph& g2, int v2) {
  int n1 = g1.order(), n2 = g2.order();
  if (v1 < 0 || v1 >= n1 || v2 < 0 || v2 >= n2)
    throw Error(ErrorCode::OutOfRange, "coalescence root out of range");
  int n = n1 + n2 - 1;
  if (n > Graph::kMaxVertices)
    throw Error(ErrorCode::OutOfRange, "coalescence exceeds 64 vertices");
  std::vector<int> map1(static_cast<size_t>(n1)), map2(static_cast<size_t>(n2));
  for (int v = 0; v < n1; ++v) map1[static_cast<size_t>(v)] = v;
  int next = n1;
  for (int v = 0; v < n2; ++v)
    map2[static_cast<size_t>(v)] = (v == v2) ? v1 : next++;
  std::vector<std::pair<int, int>> edges = g1.edges();
  for (auto [a, b] : g2.edges())
    edges.emplace_back(map2[static_cast<size_t>(a)],
                       map2[static_cast<size_t>(b)]);
  Graph g = Graph::build(n, edges);
  return {std::move(g), v1, std::move(map1), std::move(map2)};
}

namespace {

// BFS distances from src; unreachable = -1.
std::vector<int> bfs_dist(const Graph& g, int src) {
  std::vector<int> dist(static_cast<size_t>(g.order()), -1);
  std::deque<int> q{src};
  dist[static_cast<size_t>(src)] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : set_to_vector(g.neighbors(v)))
      if (dist[static_cast<size_t>(w)] < 0) {
        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
        q.push_back(w);
      }
  }
  return dist;
}

// Shortest cycle length, kInfinity when acyclic. BFS from each vertex; a
// non-tree edge (u,w) with both ends reached closes a walk of length
// dist(u)+dist(w)+1 which contains a cycle no longer than itself, and for
// roots on a shortest cycle the bound is attained.
int compute_girth(const Graph& g) {
  int best = kInfinity;
  int n = g.order();
  for (int r = 0; r < n; ++r) {
    std::vector<int> dist(static_cast<size_t>(n), -1),
        parent(static_cast<size_t>(n), -1);
    std::deque<int> q{r};
    dist[static_cast<size_t>(r)] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : set_to_vector(g.neighbors(v)))
        if (dist[static_cast<size_t>(w)] < 0) {
          dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
          parent[static_cast<size_t>(w)] = v;
          q.push_back(w);
        }
    }
    for (auto [u, w] : g.edges()) {
      if (dist[static_cast<size_t>(u)] < 0 || dist[static_cast<size_t>(w)] < 0)
        continue;
      if (parent[static_cast<size_t>(u)] == w ||
          parent[static_cast<size_t>(w)] == u)
        continue;
      best = std::min(best,
                      dist[static_cast<size_t>(u)] +
                          dist[static_cast<size_t>(w)] + 1);
    }
  }
  return best;
}

// Shortest odd cycle via BFS on the bipartite double cover: the distance
// from (v,0) to (v,1) is the shortest odd closed walk through v.
int compute_odd_girth(const Graph& g) {
  int n = g.order();
  int best = kInfinity;
  for (int r = 0; r < n; ++r) {
    std::vector<std::array<int, 2>> dist(static_cast<size_t>(n),
                                         {-1, -1});
    std::deque<std::pair<int, int>> q{{r, 0}};
    dist[static_cast<size_t>(r)][0] = 0;
    while (!q.empty()) {
      auto [v, side] = q.front();
      q.pop_front();
      for (int w : set_to_vector(g.neighbors(v))) {
        int ns = 1 - side;
        if (dist[static_cast<size_t>(w)][ns] < 0) {
          dist[static_cast<size_t>(w)][ns] =
              dist[static_cast<size_t>(v)][static_cast<size_t>(side)] + 1;
          q.emplace_back(w, ns);
        }
      }
    }
    if (dist[static_cast<size_t>(r)][1] >= 0)
      best = std::min(best, dist[static_cast<size_t>(r)][1]);
  }
  return best;
}

bool two_colorable(const Graph& g) {
  int n = g.order();
  std::vector<int> color(static_cast<size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (color[static_cast<size_t>(s)] >= 0) continue;
    color[static_cast<size_t>(s)] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : set_to_vector(g.neighbors(v))) {
        if (color[static_cast<size_t>(w)] < 0) {
          color[static_cast<size_t>(w)] = 1 - color[static_cast<size_t>(v)];
          q.push_back(w);
        } else if (color[static_cast<size_t>(w)] ==
                   color[static_cast<size_t>(v)]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

bool is_connected(const Graph& g) {
  auto dist = bfs_dist(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

bool is_unicyclic(const Graph& g) {
  return is_connected(g) && g.size() == g.order();
}

std::vector<int> unicycle(const Graph& g) {
  if (!is_unicyclic(g))
    throw Error(ErrorCode::PreconditionViolated, "graph is not unicyclic");
  int n = g.order();
  std::vector<int> deg(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) deg[static_cast<size_t>(v)] = g.degree(v);
  std::deque<int> leaves;
  for (int v = 0; v < n; ++v)
    if (deg[static_cast<size_t>(v)] == 1) leaves.push_back(v);
  VertexSet removed = 0;
  while (!leaves.empty()) {
    int v = leaves.front();
    leaves.pop_front();
    removed |= VertexSet{1} << v;
    for (int w : set_to_vector(g.neighbors(v) & ~removed))
      if (--deg[static_cast<size_t>(w)] == 1) leaves.push_back(w);
  }
  VertexSet cyc = g.vertices() & ~removed;
  std::vector<int> order;
  int start = std::countr_zero(cyc);
  int prev = -1, cur = start;
  do {
    order.push_back(cur);
    VertexSet nxt = g.neighbors(cur) & cyc & ~(prev >= 0 ? (VertexSet{1} << prev) : 0);
    prev = cur;
    cur = std::countr_zero(nxt);
  } while (cur != start);
  return order;
}

StructuralProfile profile(const Graph& g) {
  StructuralProfile p;
  p.connected = is_connected(g);
  p.bipartite = two_colorable(g);
  p.girth = compute_girth(g);
  p.odd_girth = p.bipartite ? kInfinity : compute_odd_girth(g);
  p.min_degree = g.degree(0);
  for (int v = 0; v < g.order(); ++v) {
    int d = g.degree(v);
    p.min_degree = std::min(p.min_degree, d);
    if (d == 1) p.pendant_vertices |= VertexSet{1} << v;
  }
  for (int v = 0; v < g.order(); ++v)
    if (g.neighbors(v) & p.pendant_vertices) p.p_dominators |= VertexSet{1} << v;
  return p;
}

// ---------------------------------------------------------------------------
// Canonical labeling: iterated neighborhood refinement plus backtracking over
// the first smallest non-singleton cell; the certificate is the minimum
// adjacency encoding over all discrete leaves.

namespace {

struct CanonSearch {
  const Graph& g;
  int n;
  std::vector<VertexSet> best_rows;
  std::vector<int> best_perm;
  bool have_best = false;

  explicit CanonSearch(const Graph& graph) : g(graph), n(graph.order()) {}

  // Refine colors until stable. Colors are contiguous ids 0..k-1 ordered by
  // (old color, sorted neighbor-color multiset), so the result is invariant
  // under relabeling.
  void refine(std::vector<int>& color) const {
    for (;;) {
      std::vector<std::pair<std::vector<int>, int>> sig(
          static_cast<size_t>(n));
      for (int v = 0; v < n; ++v) {
        std::vector<int> s;
        s.push_back(color[static_cast<size_t>(v)]);
        for (int w : set_to_vector(g.neighbors(v)))
          s.push_back(color[static_cast<size_t>(w)]);
        std::sort(s.begin() + 1, s.end());
        sig[static_cast<size_t>(v)] = {std::move(s), v};
      }
      std::vector<std::pair<std::vector<int>, int>> sorted = sig;
      std::sort(sorted.begin(), sorted.end());
      std::vector<int> next(static_cast<size_t>(n));
      int id = -1;
      const std::vector<int>* last = nullptr;
      for (auto& [s, v] : sorted) {
        if (!last || s != *last) {
          ++id;
          last = &s;
        }
        next[static_cast<size_t>(v)] = id;
      }
      if (next == color) return;
      color = std::move(next);
    }
  }

  void visit_leaf(const std::vector<int>& color) {
    std::vector<int> perm(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) perm[static_cast<size_t>(v)] = color[static_cast<size_t>(v)];
    std::vector<VertexSet> rows(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v)
      for (int w : set_to_vector(g.neighbors(v)))
        rows[static_cast<size_t>(perm[static_cast<size_t>(v)])] |=
            VertexSet{1} << perm[static_cast<size_t>(w)];
    if (!have_best || rows < best_rows) {
      best_rows = std::move(rows);
      best_perm = std::move(perm);
      have_best = true;
    }
  }

  void search(std::vector<int> color) {
    refine(color);
    // Locate the first smallest cell of size >= 2.
    std::vector<int> count(static_cast<size_t>(n), 0);
    for (int c : color) ++count[static_cast<size_t>(c)];
    int target = -1;
    for (int c = 0; c < n; ++c) {
      if (count[static_cast<size_t>(c)] < 2) continue;
      if (target < 0 ||
          count[static_cast<size_t>(c)] < count[static_cast<size_t>(target)])
        target = c;
    }
    if (target < 0) {
      visit_leaf(color);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (color[static_cast<size_t>(v)] != target) continue;
      std::vector<int> child(static_cast<size_t>(n));
      for (int u = 0; u < n; ++u)
        child[static_cast<size_t>(u)] = 2 * color[static_cast<size_t>(u)];
      child[static_cast<size_t>(v)] -= 1;
      search(std::move(child));
    }
  }
};

}  // namespace

CanonicalForm canonical(const Graph& g) {
  CanonSearch cs(g);
  cs.search(std::vector<int>(static_cast<size_t>(g.order()), 0));
  Graph cg = g.permuted(cs.best_perm);
  return {cg.to_graph6(), std::move(cs.best_perm)};
}

std::string canonical_cert(const Graph& g) { return canonical(g).cert; }

bool is_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return canonical_cert(a) == canonical_cert(b);
}

// ---------------------------------------------------------------------------
// graph6, short form (n <= 62): byte n+63, then the upper triangle in column
// order x(0,1) x(0,2) x(1,2) x(0,3) ... packed into big-endian 6-bit groups,
// each offset by 63.

std::string Graph::to_graph6() const {
  if (n_ > 62)
    throw Error(ErrorCode::OutOfRange, "graph6 short form requires n <= 62");
  std::string out;
  out.push_back(static_cast<char>(n_ + 63));
  int acc = 0, nbits = 0;
  for (int j = 1; j < n_; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        nbits = 0;
      }
    }
  if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

Graph Graph::from_graph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty())
    throw Error(ErrorCode::MalformedGraph6, "empty graph6 string");
  int n = static_cast<int>(static_cast<unsigned char>(text[0])) - 63;
  if (n < 0 || n > 62)
    throw Error(ErrorCode::MalformedGraph6,
                "unsupported graph6 header byte (short form, n <= 62 only)");
  if (n == 0)
    throw Error(ErrorCode::MalformedGraph6, "graph6 order 0 unsupported");
  size_t nbits = static_cast<size_t>(n) * (static_cast<size_t>(n) - 1) / 2;
  size_t nbytes = (nbits + 5) / 6;
  if (text.size() != 1 + nbytes)
    throw Error(ErrorCode::MalformedGraph6, "graph6 length mismatch");
  std::vector<std::pair<int, int>> edges;
  size_t bit = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++bit) {
      unsigned char c = static_cast<unsigned char>(text[1 + bit / 6]);
      if (c < 63 || c > 126)
        throw Error(ErrorCode::MalformedGraph6, "graph6 byte out of range");
      if ((c - 63) >> (5 - bit % 6) & 1) edges.emplace_back(i, j);
    }
  // Trailing padding bits must be zero.
  for (size_t b = nbits; b < nbytes * 6; ++b) {
    unsigned char c = static_cast<unsigned char>(text[1 + b / 6]);
    if ((c - 63) >> (5 - b % 6) & 1)
      throw Error(ErrorCode::MalformedGraph6, "nonzero graph6 padding");
  }
  return build(n, edges);
}

// ---------------------------------------------------------------------------
// DOT

std::string to_dot(const Graph& g, const LabelMap* labels) {
  std::vector<std::string> name(static_cast<size_t>(g.order()));
  if (labels)
    for (auto& [label, v] : *labels)
      if (v >= 0 && v < g.order()) name[static_cast<size_t>(v)] = label;
  std::ostringstream os;
  os << "graph G {\n";
  for (int v = 0; v < g.order(); ++v) {
    os << "  " << v;
    if (!name[static_cast<size_t>(v)].empty())
      os << " [label=\"" << name[static_cast<size_t>(v)] << "\"]";
    os << ";\n";
  }
  for (auto [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
  return os.str();
}

Graph from_dot(std::string_view text) {
  std::vector<std::pair<int, int>> edges;
  int max_vertex = -1;
  std::istringstream is{std::string(text)};
  std::string line;
  auto parse_int = [](std::string_view s, int& out) {
    auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    return r.ec == std::errc();
  };
  while (std::getline(is, line)) {
    std::string_view sv(line);
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t'))
      sv.remove_prefix(1);
    if (sv.empty() || sv.starts_with("graph") || sv.starts_with("}")) continue;
    size_t dash = sv.find("--");
    int a = 0, b = 0;
    if (dash != std::string_view::npos) {
      size_t semi = sv.find(';');
      std::string_view left = sv.substr(0, dash);
      std::string_view right = sv.substr(dash + 2, semi - dash - 2);
      while (!left.empty() && left.back() == ' ') left.remove_suffix(1);
      while (!right.empty() && right.front() == ' ') right.remove_prefix(1);
      if (parse_int(left, a) && parse_int(right, b)) {
        edges.emplace_back(a, b);
        max_vertex = std::max({max_vertex, a, b});
      }
    } else if (parse_int(sv.substr(0, sv.find_first_of(" [;")), a)) {
      max_vertex = std::max(max_vertex, a);
    }
  }
  if (max_vertex < 0)
    throw Error(ErrorCode::MalformedGraph6, "no vertices found in DOT input");
  return Graph::build(max_vertex + 1, edges);
}

}  // namespace qdom
