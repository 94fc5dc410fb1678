#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdom/graph.hpp"

namespace qdom::families {

enum class FamilyKind {
  Path,
  Cycle,
  Star,
  StarPlus,
  Complete,
  CompleteBipartite,
  Lollipop,
  FGraph,
  CurlyF,
  CurlyFCirc,
  C3Star,
  Corona,
  H1,
  H2,
  H3,
  H4,
  H5,
  ScriptH3,
  Theorem39K,
  CycleWithTrees,
};

std::string kind_name(FamilyKind kind);
std::optional<FamilyKind> kind_from_name(std::string_view name);

struct TreeAttachment {
  Graph tree;
  int root;
};

/// Parameter record for one named family. Only the fields a kind uses are
/// read; make() rejects inconsistent records with InvalidSpec.
///
/// Vertices are 0-indexed internally; constructors map the customary
/// 1-indexed labels v_i to index i-1. Cycle vertices come first (v_1..v_g),
/// then path vertices (v_{g+1}..v_{g+l}), then pendants in attachment order.
struct FamilySpec {
  FamilyKind kind = FamilyKind::Path;
  long n = -1;      // order (Path, Cycle, Star, ..., C3Star, H*, ScriptH3)
  long g = -1;      // girth / cycle length (Lollipop, FGraph, CurlyF*)
  long l = -1;      // pendant path length
  long eps = -1;    // H-family path end position
  long k = -1;      // H-family p-dominator count, C3Star path length,
                    // CycleWithTrees cycle length
  long alpha = -1;  // ScriptH3 p-dominator count
  long r = -1, s = -1;  // CompleteBipartite part sizes
  std::vector<int> attach;     // pendant targets, 1-indexed (FGraph, CurlyF*)
                               // or H1 positions a_1 < ... < a_k
  std::vector<TreeAttachment> trees;  // CycleWithTrees
  std::vector<int> positions;         // CycleWithTrees, 0-indexed
  std::shared_ptr<const FamilySpec> base;  // Corona
};

struct FamilyInstance {
  Graph graph;
  LabelMap labels;
  FamilySpec spec;
};

FamilyInstance make(const FamilySpec& spec);

FamilyInstance make_script_h3(int n, int alpha);
FamilyInstance make_h_family(int variant, int eps, int k,
                             std::span<const int> attachments, int n);
FamilyInstance make_theorem39_k(int n);
FamilyInstance make_cycle_with_trees(int cycle_len,
                                     std::span<const TreeAttachment> trees,
                                     std::span<const int> positions);
FamilyInstance make_corona(const Graph& base);

std::string to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(const std::string& text);

/// Structural view of an F_{g,l}-shaped graph: the cycle C = v_1..v_g, the
/// pendant path P = v_g v_{g+1}..v_{g+l}, which positions carry pendants.
struct CurlyFShape {
  int g = 0, l = 0;
  std::vector<int> cycle;  // internal index of v_1..v_g
  std::vector<int> path;   // internal index of v_{g+1}..v_{g+l}
  std::vector<int> r;      // 1-indexed cycle positions of p-dominators
  int s = -1;              // least s >= 0 with v_{g+s} a p-dominator
  std::map<int, std::vector<int>> pendants;  // position -> pendant indices

  int vertex(int paper_pos) const;  // position 1..g+l -> internal index
  bool circ() const { return s == 0; }
};

/// View of a constructed CurlyF/CurlyFCirc/FGraph/Lollipop instance, in the
/// constructor's own labeling.
CurlyFShape curly_f_shape(const FamilyInstance& inst);

/// Recognize an F_{g,l} structure in an arbitrary graph. With strict=true
/// the one-pendant-per-p-dominator rule away from v_{g+l-1} is enforced
/// (the curly variant). Returns nullopt when the graph has no such shape.
std::optional<CurlyFShape> recognize_curly_f(const Graph& g,
                                             bool strict = true);

}  // namespace qdom::families
