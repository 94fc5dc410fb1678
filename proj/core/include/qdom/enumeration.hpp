#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qdom/domination.hpp"
#include "qdom/graph.hpp"
#include "qdom/report.hpp"
#include "qdom/spectra.hpp"

namespace qdom::enumeration {

enum class UniverseKind {
  UnicyclicNonbipartite,  // n <= 12
  ConnectedNonbipartite,  // n <= 8
  ConnectedAll,           // n <= 8
};

struct UniverseSpec {
  UniverseKind kind = UniverseKind::ConnectedAll;
  int n = 0;
  std::optional<int> girth;              // exact girth
  std::optional<int> odd_girth_max;      // g_o <= bound
  std::optional<std::pair<int, int>> gamma_range;  // inclusive
};

struct CacheEntry {
  int gamma = 0;
  double q_min = 0.0;
  int girth = 0;      // -1 encodes infinity on disk
  int odd_girth = 0;  // likewise
};

/// gamma / q_min / girth store keyed by canonical certificate, shared across
/// sweeps and persisted as JSON lines.
class Cache {
 public:
  CacheEntry lookup(const Graph& g, double tol);
  std::size_t size() const;
  void load(const std::string& path);   // missing file is fine
  void save(const std::string& path) const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, CacheEntry> map_;
};

/// One canonical representative per isomorphism class, sorted by
/// certificate. Unicyclic universes are built constructively (cycle plus
/// grown pendant forests); general ones by vertex extension. Throws
/// BudgetExceeded past the guards, EmptyUniverse never (empty result is a
/// valid answer).
std::vector<Graph> enumerate_universe(const UniverseSpec& spec,
                                      Cache* cache = nullptr,
                                      double tol = 1e-10);

/// Labeled enumeration + canonical dedup, the independent cross-check for
/// small n (n <= 6 intended).
std::vector<std::string> connected_certs_by_labeled_enumeration(int n);

struct ExtremalResult {
  std::vector<Graph> minimizers;  // within margin of the minimum
  double min_value = 0.0;
  bool unique = false;            // single minimizer, runner-up gap > margin
  double runner_up_gap = 0.0;     // vs the best non-minimizer class
};

ExtremalResult extremal_search(const UniverseSpec& spec, double margin,
                               double tol = 1e-10, Cache* cache = nullptr,
                               int workers = 1);

/// Universe-quantified theorem checks. Enumeration-backed ids: Thm3.2,
/// Thm4.4, Thm4.5, Thm4.7, Thm4.8, Thm4.10, Thm5.1, Thm5.2, Thm5.3, Thm5.4,
/// Lemma2.7; transform ids are forwarded to perturb::verify_transform_lemma.
report::VerificationReport verify_theorem(const std::string& id, int budget_n,
                                          double tol = 1e-10,
                                          double margin = 1e-8,
                                          Cache* cache = nullptr,
                                          int workers = 1);

std::vector<std::string> theorem_ids();

/// The open-question explorer: for every nonbipartite graph of order n with
/// (n+1)/3 < gamma <= n/2, compare q_min against the conjectured extremal
/// ScriptH3 instance. Reports support or counterexamples, never a proof.
report::VerificationReport explore_conjecture(int n_lo, int n_hi,
                                              double tol = 1e-10,
                                              double margin = 1e-8,
                                              Cache* cache = nullptr,
                                              int workers = 1);

/// Least alpha with ceil((n-2a-2)/3)+a == gamma and a feasible ScriptH3
/// order-n instance; nullopt when no alpha fits.
std::optional<int> least_alpha(int n, int gamma);

/// Does g contain a spanning subgraph satisfying pred, where the subgraph is
/// connected unicyclic with the given odd cycle length? Used for Lemma 2.7
/// and the script-F containment universes.
bool has_spanning_unicyclic(const Graph& g, int cycle_len,
                            const std::function<bool(const Graph&)>& pred);

}  // namespace qdom::enumeration
