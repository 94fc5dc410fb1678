#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qdom/families.hpp"
#include "qdom/graph.hpp"

namespace qdom::domination {

struct DominationCert {
  int gamma = 0;
  VertexSet witness = 0;
  bool contains_all_p_dominators = false;
  bool contains_no_pendant = false;
};

/// Exact domination number by branch-and-bound over the closed-neighborhood
/// cover, with a greedy initial upper bound. When the graph has pendants and
/// a minimum dominating set containing every p-dominator and no pendant
/// exists, that witness is returned.
DominationCert domination_number(const Graph& g);

/// Every dominating set of minimum cardinality. Throws ResultTooLarge past
/// the cap.
std::vector<VertexSet> minimum_dominating_sets(const Graph& g,
                                               std::size_t cap = 1'000'000);

/// A minimum dominating set containing must_include and avoiding
/// must_exclude, when one exists.
std::optional<VertexSet> structured_mds(const Graph& g, VertexSet must_include,
                                        VertexSet must_exclude);

/// Closed-form gamma for the families the formulas cover; nullopt otherwise.
std::optional<int> closed_form_gamma(const families::FamilySpec& spec);

/// Mathematical ceiling of a/b for b > 0 and any a.
int ceil_div(long a, long b);

/// First: gamma(G) == n/2 (exact solver). Second: G is C_4 or a corona
/// H o K_1, detected structurally. The two agree on connected graphs
/// without isolated vertices.
std::pair<bool, bool> corona_gamma_half_check(const Graph& g);

/// Is G = H o K_1 for some H (perfect pendant matching), or G = C_4?
bool is_corona_or_c4(const Graph& g);

std::string to_json(const DominationCert& cert);

}  // namespace qdom::domination
