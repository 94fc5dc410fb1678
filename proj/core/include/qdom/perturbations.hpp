#pragma once

#include <string>
#include <vector>

#include "qdom/domination.hpp"
#include "qdom/families.hpp"
#include "qdom/graph.hpp"
#include "qdom/report.hpp"
#include "qdom/spectra.hpp"

namespace qdom::perturb {

enum class TransformKind {
  G1,              // G - v_{a+1}v_{a+2} + v_{a+1}v_{a-1}, positions mod g
  G2,              // G1 - v_{a-1}v_{a-2} + v_{a-1}v_{a+2}
  ScriptX,         // X_i / X_t pendant-and-chord rewiring
  ScriptG,         // SG_i pendant-and-chord rewiring
  PendantRelocate, // move one pendant between two positions
  H2FromH1,        // the full H1 -> H2 pendant relocation
  KFromCycle,      // odd-cycle rewiring K
  TreeMove,        // coalescence move of a tree between two vertices
};

struct TransformSpec {
  TransformKind kind = TransformKind::G1;
  int a = -1;              // G1/G2 anchor, 1-indexed cycle position
  int i = -1;              // ScriptX/ScriptG index; use i == t for the tail
  int from = -1, to = -1;  // PendantRelocate positions (1-indexed)
};

enum class Rel { LT, LE, EQ, GE, Unknown };
std::string rel_name(Rel r);

struct TransformOutcome {
  Graph graph_out;
  Rel gamma_asserted = Rel::Unknown;  // gamma(out) vs gamma(in)
  Rel qmin_asserted = Rel::Unknown;   // qmin(out) vs qmin(in)
  int gamma_in = 0, gamma_out = 0;
  double qmin_in = 0.0, qmin_out = 0.0;
  bool contradicted = false;  // measured values clearly violate an assertion
  bool certified = true;      // strict claims hold with the margin to spare
  std::string note;
};

/// Apply a transform to a lollipop-family instance, measure gamma and q_min
/// on both sides, and compare against whatever relation the matching lemma
/// asserts for these parameters.
TransformOutcome apply(const families::FamilyInstance& inst,
                       const TransformSpec& t, double tol = 1e-10,
                       double margin = 1e-8);

struct TreeMoveOutcome {
  Graph before, after;
  bool precondition_met = false;  // |x_{v1}| > |x_{v2}|, or both equal nonzero
  double qmin_before = 0.0, qmin_after = 0.0;
  bool contradicted = false;
  bool certified = false;
};

/// Lemma-2.4 move: before = g1(v2) coalesce tree(root), after = g1(v1)
/// coalesce tree(root). The eigenvector precondition is evaluated on the
/// before graph; when met, qmin(after) < qmin(before) is asserted.
TreeMoveOutcome tree_move(const Graph& g1, int v1, int v2, const Graph& tree,
                          int root, double tol = 1e-10, double margin = 1e-8);

/// Parameter sweeps for the transform lemmas. Known ids: Lemma3.1, Lemma2.4,
/// Lemma3.3, Thm3.4, Thm3.5, Lemma3.7, Lemma3.8, Thm3.9, Thm4.2, Lemma4.9,
/// Lemma4.11.
report::VerificationReport verify_transform_lemma(const std::string& id,
                                                  int budget_n,
                                                  double tol = 1e-10,
                                                  double margin = 1e-8,
                                                  int workers = 1);

std::vector<std::string> transform_lemma_ids();

/// All curly F_{g,l} instances (optionally only those with s = 0) with order
/// at most max_n, l at most max_l, in deterministic order.
std::vector<families::FamilyInstance> curly_f_instances(int g, int max_n,
                                                        int max_l,
                                                        bool circ_only);

}  // namespace qdom::perturb
