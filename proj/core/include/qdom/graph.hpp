#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qdom {

enum class ErrorCode {
  OutOfRange,
  SelfLoop,
  DuplicateEdge,
  EdgeAbsent,
  EdgePresent,
  EmptyResult,
  MalformedGraph6,
  DimensionMismatch,
  InvalidSpec,
  PreconditionViolated,
  ResultTooLarge,
  BudgetExceeded,
  EmptyUniverse,
  UnknownTheorem,
  NoConvergence,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

using VertexSet = std::uint64_t;  // bit i set <=> vertex i in the set

inline bool set_contains(VertexSet s, int v) { return (s >> v) & 1u; }
inline VertexSet set_of(std::initializer_list<int> vs) {
  VertexSet s = 0;
  for (int v : vs) s |= VertexSet{1} << v;
  return s;
}
int set_size(VertexSet s);
std::vector<int> set_to_vector(VertexSet s);

/// Immutable simple undirected graph on at most 64 vertices.
/// Adjacency is one 64-bit row per vertex; all edit operations return
/// new graphs.
class Graph {
 public:
  static constexpr int kMaxVertices = 64;

  static Graph build(int n, std::span<const std::pair<int, int>> edges);
  static Graph build(int n, std::initializer_list<std::pair<int, int>> edges);
  static Graph from_graph6(std::string_view text);

  int order() const { return n_; }
  int size() const { return m_; }
  VertexSet vertices() const {
    return n_ == 64 ? ~VertexSet{0} : (VertexSet{1} << n_) - 1;
  }
  VertexSet neighbors(int v) const { return adj_[static_cast<size_t>(v)]; }
  VertexSet closed_neighbors(int v) const {
    return adj_[static_cast<size_t>(v)] | (VertexSet{1} << v);
  }
  int degree(int v) const;
  bool has_edge(int u, int v) const;
  std::vector<std::pair<int, int>> edges() const;

  Graph add_edge(int u, int v) const;     // throws EdgePresent
  Graph delete_edge(int u, int v) const;  // throws EdgeAbsent

  struct VertexDeletion;
  VertexDeletion delete_vertices(VertexSet drop) const;

  Graph permuted(std::span<const int> perm) const;  // vertex i -> perm[i]

  std::string to_graph6() const;  // short form, n <= 62
  bool operator==(const Graph& o) const = default;

 private:
  Graph() = default;
  int n_ = 0;
  int m_ = 0;
  std::vector<VertexSet> adj_;
};

struct Graph::VertexDeletion {
  Graph graph;
  std::vector<int> index_map;  // old index -> new index, -1 if deleted
};

struct Coalescence {
  Graph graph;
  int root;                    // index of the merged vertex
  std::vector<int> map_first;  // G1 index -> result index
  std::vector<int> map_second; // G2 index -> result index
};

/// Identify v1 of g1 with v2 of g2. G1 keeps its labels; the merged vertex
/// is v1; remaining G2 vertices follow in order.
Coalescence coalesce(const Graph& g1, int v1, const Graph& g2, int v2);

inline constexpr int kInfinity = std::numeric_limits<int>::max();

struct StructuralProfile {
  bool connected = false;
  bool bipartite = false;
  int girth = kInfinity;      // kInfinity for acyclic graphs
  int odd_girth = kInfinity;  // kInfinity for bipartite graphs
  int min_degree = 0;
  VertexSet pendant_vertices = 0;  // degree-1 vertices
  VertexSet p_dominators = 0;      // vertices adjacent to a pendant
};

StructuralProfile profile(const Graph& g);

bool is_connected(const Graph& g);
bool is_unicyclic(const Graph& g);  // connected and m == n

/// Vertices of the unique cycle of a unicyclic graph, in cycle order.
std::vector<int> unicycle(const Graph& g);

struct CanonicalForm {
  std::string cert;            // graph6 string of the canonical relabeling
  std::vector<int> relabeling; // vertex i -> canonical position
};

CanonicalForm canonical(const Graph& g);
std::string canonical_cert(const Graph& g);
bool is_isomorphic(const Graph& a, const Graph& b);

using LabelMap = std::map<std::string, int>;  // paper vertex name -> index

std::string to_dot(const Graph& g, const LabelMap* labels = nullptr);
Graph from_dot(std::string_view text);  // reads the format to_dot emits

}  // namespace qdom
