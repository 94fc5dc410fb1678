#include "qdom/perturbations.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qdom/parallel.hpp"

namespace qdom::perturb {

using families::CurlyFShape;
using families::FamilyInstance;
using families::FamilyKind;
using families::FamilySpec;
using nlohmann::json;
using report::Record;
using report::VerificationReport;
using spectra::CheckStatus;

std::string rel_name(Rel r) {
  switch (r) {
    case Rel::LT: return "LT";
    case Rel::LE: return "LE";
    case Rel::EQ: return "EQ";
    case Rel::GE: return "GE";
    case Rel::Unknown: return "UNKNOWN";
  }
  return "?";
}

namespace {

[[noreturn]] void precondition(const std::string& what) {
  throw Error(ErrorCode::PreconditionViolated, what);
}

// Position helpers over a lollipop-family instance: cyclic 1-indexed cycle
// positions, path positions g+1..g+l.
struct FView {
  const Graph* graph;
  CurlyFShape shape;
  int g, l, t;

  explicit FView(const FamilyInstance& inst)
      : graph(&inst.graph), shape(families::curly_f_shape(inst)) {
    g = shape.g;
    l = shape.l;
    t = static_cast<int>(shape.r.size());
  }

  int cyc(int pos) const {
    int p = ((pos - 1) % g + g) % g;
    return shape.cycle[static_cast<size_t>(p)];
  }
  int pathv(int pos) const { return shape.vertex(pos); }
  const std::vector<int>* pend(int pos) const {
    auto it = shape.pendants.find(pos);
    return it == shape.pendants.end() ? nullptr : &it->second;
  }
  int tau(int pos) const {
    const auto* p = pend(pos);
    if (!p || p->empty())
      precondition("no pendant at position " + std::to_string(pos));
    return p->front();
  }
  int r(int i) const {  // 1-indexed
    if (i < 1 || i > t) precondition("p-dominator index out of range");
    return shape.r[static_cast<size_t>(i - 1)];
  }
  bool circ() const { return shape.circ(); }
};

Graph g1_graph(const FView& f, int a) {
  if (a < 1 || a > f.g) precondition("G1 requires 1 <= a <= g");
  return f.graph->delete_edge(f.cyc(a + 1), f.cyc(a + 2))
      .add_edge(f.cyc(a + 1), f.cyc(a - 1));
}

Graph g2_graph(const FView& f, int a) {
  return g1_graph(f, a)
      .delete_edge(f.cyc(a - 1), f.cyc(a - 2))
      .add_edge(f.cyc(a - 1), f.cyc(a + 2));
}

// Mirrored variants used by the Theorem 4.2 proof when the eigenvector
// favors the other direction around the cycle.
Graph g1_mirror_graph(const FView& f, int a) {
  return f.graph->delete_edge(f.cyc(a), f.cyc(a - 1))
      .add_edge(f.cyc(a), f.cyc(a + 2));
}

Graph g2_mirror_graph(const FView& f, int a) {
  return g1_mirror_graph(f, a)
      .delete_edge(f.cyc(a + 2), f.cyc(a + 3))
      .add_edge(f.cyc(a + 2), f.cyc(a - 1));
}

// X_t: defined for r_t = g and r_1 >= 4.
Graph script_x_tail(const FView& f) {
  if (!f.circ() || f.r(f.t) != f.g) precondition("X_t requires r_t = g");
  if (f.r(1) < 4) precondition("X_t requires r_1 >= 4");
  Graph out = f.graph->delete_edge(f.cyc(2), f.cyc(3))
                  .add_edge(f.cyc(2), f.cyc(f.g));
  if (f.l == 1) {
    for (int p : *f.pend(f.g))
      out = out.delete_edge(f.cyc(f.g), p).add_edge(f.cyc(3), p);
  } else {
    int tau = f.tau(f.g);
    out = out.delete_edge(f.cyc(f.g), tau).add_edge(f.cyc(3), tau);
    int p1 = f.pathv(f.g + 1);
    out = out.delete_edge(f.cyc(f.g), p1).add_edge(p1, f.cyc(3));
  }
  return out;
}

// X_i for 1 <= i <= t-1: requires r_t = g and r_{i+1} - r_i >= 4.
Graph script_x_interior(const FView& f, int i) {
  if (i < 1 || i >= f.t) precondition("interior X_i requires 1 <= i <= t-1");
  if (f.r(f.t) != f.g) precondition("X_i requires r_t = g");
  if (f.r(i + 1) - f.r(i) < 4) precondition("X_i requires r_{i+1}-r_i >= 4");
  int ri = f.r(i);
  int tau = f.tau(ri);
  return f.graph->delete_edge(f.cyc(ri + 2), f.cyc(ri + 3))
      .add_edge(f.cyc(ri + 2), f.cyc(ri))
      .delete_edge(f.cyc(ri), tau)
      .add_edge(f.cyc(ri + 3), tau);
}

Graph script_x_graph(const FView& f, int i) {
  return (i == f.t) ? script_x_tail(f) : script_x_interior(f, i);
}

Graph script_g_graph(const FView& f, int i) {
  if (i < 1 || i > f.t) precondition("SG_i requires 1 <= i <= t");
  if (i == 1 && f.t >= 2) {
    int r1 = f.r(1);
    if (r1 < 4) precondition("SG_1 requires r_1 >= 4");
    int tau = f.tau(r1);
    return f.graph->delete_edge(f.cyc(r1), tau)
        .delete_edge(f.cyc(r1), f.cyc(r1 + 1))
        .add_edge(f.cyc(r1), f.cyc(r1 - 2))
        .add_edge(f.cyc(1), tau);
  }
  if (i >= 2 && i <= f.t - 1) {
    int ri = f.r(i);
    if (ri - f.r(i - 1) < 4) precondition("SG_i requires r_i - r_{i-1} >= 4");
    int tau = f.tau(ri);
    return f.graph->delete_edge(f.cyc(ri), tau)
        .delete_edge(f.cyc(ri), f.cyc(ri + 1))
        .add_edge(f.cyc(ri), f.cyc(ri - 2))
        .add_edge(f.cyc(f.r(i - 1) + 1), tau);
  }
  // i == t
  if (f.t < 2) precondition("SG_t requires at least two p-dominators");
  int rt = f.r(f.t);
  int target = f.cyc(f.r(f.t - 1) + 1);
  if (rt < f.g) {
    if (rt - f.r(f.t - 1) < 4)
      precondition("SG_t requires r_t - r_{t-1} >= 4");
    int tau = f.tau(rt);
    return f.graph->delete_edge(f.cyc(rt), tau)
        .add_edge(target, tau)
        .delete_edge(f.cyc(rt), f.cyc(rt + 1))
        .add_edge(f.cyc(rt), f.cyc(rt - 2));
  }
  if (f.g - f.r(f.t - 1) < 4)
    precondition("SG_t requires g - r_{t-1} >= 4");
  Graph out = *f.graph;
  if (f.l == 1) {
    for (int p : *f.pend(f.g))
      out = out.delete_edge(f.cyc(f.g), p).add_edge(target, p);
    return out.delete_edge(f.cyc(f.g), f.cyc(1))
        .add_edge(f.cyc(f.g), f.cyc(f.g - 2));
  }
  int tau = f.tau(f.g);
  out = out.delete_edge(f.cyc(f.g), tau).add_edge(target, tau);
  out = out.delete_edge(f.cyc(f.g), f.cyc(1))
            .add_edge(f.cyc(f.g), f.cyc(f.g - 2));
  int p1 = f.pathv(f.g + 1);
  return out.delete_edge(f.cyc(f.g), p1).add_edge(p1, target);
}

// Lemma 3.3 case analysis for an F-circ instance and anchor a.
struct CaseInfo {
  int which = 4;       // 1..4 matching the lemma clauses
  int index = -1;      // i with r_{i-1} < a <= r_i
  int next_spacing = 0;  // cyclic gap r_{i+1} - r_i used for (iii)
};

CaseInfo classify_a(const FView& f, int a) {
  CaseInfo info;
  int prev = 0;
  for (int i = 1; i <= f.t; ++i) {
    if (a > prev && a <= f.r(i)) {
      info.index = i;
      break;
    }
    prev = f.r(i);
  }
  int i = info.index;
  int rprev = (i >= 2) ? f.r(i - 1) : 0;
  int spacing = f.r(i) - rprev;  // for i=1 this is the cyclic gap (r_t = g)
  if (a == rprev + 1 && spacing >= 4) {
    info.which = 1;
    return info;
  }
  if (a >= rprev + 2 && a <= f.r(i) - 3) {
    info.which = 2;
    return info;
  }
  if (a == f.r(i) - 1 && f.r(i) >= 4) {
    bool definable = false;
    if (i == 1)
      definable = f.t >= 2 && f.r(1) >= 4;
    else if (i <= f.t - 1)
      definable = f.r(i) - f.r(i - 1) >= 4;
    else
      definable = f.t >= 2 && f.g - f.r(f.t - 1) >= 4;
    if (definable) {
      info.which = 3;
      info.next_spacing =
          (i < f.t) ? f.r(i + 1) - f.r(i) : f.r(1) + f.g - f.r(f.t);
      return info;
    }
  }
  info.which = 4;
  return info;
}

int gamma_of(const Graph& g) { return domination::domination_number(g).gamma; }

}  // namespace

TransformOutcome apply(const FamilyInstance& inst, const TransformSpec& t,
                       double tol, double margin) {
  const Graph& in = inst.graph;
  TransformOutcome out{in, Rel::Unknown, Rel::Unknown, 0, 0, 0.0, 0.0, false, true, {}};
  switch (t.kind) {
    case TransformKind::G1:
    case TransformKind::G2: {
      FView f(inst);
      out.graph_out =
          (t.kind == TransformKind::G1) ? g1_graph(f, t.a) : g2_graph(f, t.a);
      if (f.circ() && f.g >= 5 && t.kind == TransformKind::G1) {
        CaseInfo c = classify_a(f, t.a);
        if (c.which == 4) out.gamma_asserted = Rel::GE;
      }
      break;
    }
    case TransformKind::ScriptX: {
      FView f(inst);
      out.graph_out = script_x_graph(f, t.i);
      if (f.circ() && f.g >= 5) out.gamma_asserted = Rel::EQ;
      break;
    }
    case TransformKind::ScriptG: {
      FView f(inst);
      out.graph_out = script_g_graph(f, t.i);
      if (f.circ() && f.g >= 5) out.gamma_asserted = Rel::GE;
      break;
    }
    case TransformKind::PendantRelocate: {
      FView f(inst);
      int tau = f.tau(t.from);
      out.graph_out = in.delete_edge(f.shape.vertex(t.from), tau)
                          .add_edge(f.shape.vertex(t.to), tau);
      break;
    }
    case TransformKind::H2FromH1: {
      const FamilySpec& s = inst.spec;
      if (s.kind != FamilyKind::H1) precondition("H2FromH1 needs an H1 input");
      // The displayed relocation: every pendant tau_j leaves its position
      // a_j for position eps-2-k+j.
      Graph g = in;
      long eps = s.eps, k = s.k;
      for (long j = 1; j <= k; ++j) {
        int a = s.attach[static_cast<size_t>(j - 1)];
        auto it = inst.labels.find("tau_" + std::to_string(a));
        if (it == inst.labels.end())
          precondition("H1 instance lacks pendant bookkeeping");
        int tau = it->second;
        g = g.delete_edge(a - 1, tau)
                .add_edge(static_cast<int>(eps - 2 - k + j) - 1, tau);
      }
      out.graph_out = std::move(g);
      out.gamma_asserted = Rel::GE;  // gamma(H1) <= gamma(H2)
      break;
    }
    case TransformKind::KFromCycle: {
      if (inst.spec.kind != FamilyKind::Cycle)
        precondition("KFromCycle needs a cycle input");
      int n = static_cast<int>(inst.spec.n);
      out.graph_out = families::make_theorem39_k(n).graph;
      out.gamma_asserted = Rel::EQ;
      out.qmin_asserted = (n == 3) ? Rel::EQ : Rel::LT;
      break;
    }
    case TransformKind::TreeMove:
      precondition("use tree_move() for coalescence moves");
  }

  out.gamma_in = gamma_of(in);
  out.gamma_out = gamma_of(out.graph_out);
  out.qmin_in = spectra::q_spectrum(in, tol).q_min;
  out.qmin_out = spectra::q_spectrum(out.graph_out, tol).q_min;

  switch (out.gamma_asserted) {
    case Rel::EQ: out.contradicted |= out.gamma_out != out.gamma_in; break;
    case Rel::GE: out.contradicted |= out.gamma_out < out.gamma_in; break;
    case Rel::LE: out.contradicted |= out.gamma_out > out.gamma_in; break;
    case Rel::LT: out.contradicted |= out.gamma_out >= out.gamma_in; break;
    case Rel::Unknown: break;
  }
  if (out.qmin_asserted == Rel::LT) {
    out.contradicted |= out.qmin_out >= out.qmin_in + margin;
    out.certified = out.qmin_out < out.qmin_in - margin;
  } else if (out.qmin_asserted == Rel::EQ) {
    out.certified = std::abs(out.qmin_out - out.qmin_in) <= margin;
  }
  return out;
}

TreeMoveOutcome tree_move(const Graph& g1, int v1, int v2, const Graph& tree,
                          int root, double tol, double margin) {
  if (v1 == v2) precondition("tree_move needs two distinct vertices");
  if (tree.order() < 2) precondition("tree_move needs a nontrivial tree");
  if (profile(g1).bipartite || !is_connected(g1))
    precondition("tree_move needs a connected nonbipartite base");
  TreeMoveOutcome out{coalesce(g1, v2, tree, root).graph,
                      coalesce(g1, v1, tree, root).graph};
  spectra::SpectralCert before = spectra::q_spectrum(out.before, tol);
  // v1, v2 keep their indices in the coalesced graph (base labels first).
  double a1 = std::abs(before.eigvec(v1));
  double a2 = std::abs(before.eigvec(v2));
  bool clear_greater = a1 > a2 + margin;
  bool equal_nonzero = std::abs(a1 - a2) <= margin && a1 > 100.0 * margin;
  out.precondition_met = clear_greater || equal_nonzero;
  out.qmin_before = before.q_min;
  out.qmin_after = spectra::q_spectrum(out.after, tol).q_min;
  if (out.precondition_met) {
    out.contradicted = out.qmin_after >= out.qmin_before + margin;
    out.certified = out.qmin_after < out.qmin_before - margin;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Instance generation

std::vector<FamilyInstance> curly_f_instances(int g, int max_n, int max_l,
                                              bool circ_only) {
  std::vector<FamilyInstance> out;
  for (int l = 1; l <= max_l; ++l) {
    int base = g + l;
    if (base > max_n) break;
    // Candidate pendant targets: cycle positions and path interior.
    std::vector<int> slots;
    for (int p = 1; p <= g; ++p) slots.push_back(p);
    for (int p = g + 1; p <= g + l - 1; ++p) slots.push_back(p);
    int nslots = static_cast<int>(slots.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nslots); ++mask) {
      std::vector<int> attach;
      for (int b = 0; b < nslots; ++b)
        if ((mask >> b) & 1) attach.push_back(slots[static_cast<size_t>(b)]);
      bool has_g = std::find(attach.begin(), attach.end(), g) != attach.end();
      bool circ = (l == 1) || has_g;
      if (circ_only && !circ) continue;
      for (int extra = 0; extra <= 2; ++extra) {
        int n = base + static_cast<int>(attach.size()) + extra;
        if (n > max_n) break;
        std::vector<int> full = attach;
        for (int e = 0; e < extra; ++e) full.push_back(base - 1);
        FamilySpec spec;
        spec.kind = circ ? FamilyKind::CurlyFCirc : FamilyKind::CurlyF;
        spec.g = g;
        spec.l = l;
        spec.attach = full;
        out.push_back(families::make(spec));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

json shape_params(const FView& f) {
  return json{{"g", f.g}, {"l", f.l}, {"r", f.shape.r}, {"n", f.graph->order()}};
}

Record record_for(const std::string& lemma, const json& params,
                  CheckStatus status, const Graph& g,
                  std::optional<int> gamma = std::nullopt,
                  std::optional<double> qmin = std::nullopt,
                  const std::string& note = "") {
  Record r;
  r.lemma = lemma;
  r.params_json = params.dump();
  r.status = status;
  r.graph6 = g.to_graph6();
  r.gamma = gamma;
  r.q_min = qmin;
  r.note = note;
  return r;
}

Graph random_connected_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  for (;;) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) edges.emplace_back(i, j);
    Graph g = Graph::build(n, edges);
    if (is_connected(g)) return g;
  }
}

Graph random_tree(std::mt19937_64& rng, int n) {
  if (n == 1) return Graph::build(1, {});
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    edges.emplace_back(v, pick(rng));
  }
  return Graph::build(n, edges);
}

void sweep_lemma31(VerificationReport& rep, int budget_n) {
  std::mt19937_64 rng(20250811);
  for (int trial = 0; trial < 120; ++trial) {
    std::uniform_int_distribution<int> hsize(2, std::max(2, budget_n - 4));
    int hn = hsize(rng);
    Graph h = random_connected_graph(rng, hn, 0.5);
    std::uniform_int_distribution<int> ksize(3, 5);
    int k = ksize(rng);
    // Star of order k with center 0; pendant 1 is the coalescence vertex u.
    families::FamilySpec star;
    star.kind = FamilyKind::Star;
    star.n = k;
    Graph s = families::make(star).graph;
    std::uniform_int_distribution<int> pick(0, hn - 1);
    Graph g = coalesce(h, pick(rng), s, 1).graph;
    int gg = gamma_of(g), gh = gamma_of(h);
    bool ok = gg - 1 <= gh && gh <= gg;
    rep.records.push_back(record_for(
        "Lemma3.1", json{{"n_H", hn}, {"k", k}, {"trial", trial}},
        ok ? CheckStatus::Pass : CheckStatus::Fail, g, gg, std::nullopt,
        "gamma(H)=" + std::to_string(gh)));
  }
}

void sweep_lemma24(VerificationReport& rep, int budget_n, double tol,
                   double margin) {
  std::mt19937_64 rng(424242);
  int done = 0;
  while (done < 60) {
    std::uniform_int_distribution<int> bsize(3, std::max(3, budget_n - 2));
    int bn = bsize(rng);
    Graph base = random_connected_graph(rng, bn, 0.5);
    if (profile(base).bipartite) continue;
    std::uniform_int_distribution<int> tsize(2, 4);
    Graph tree = random_tree(rng, tsize(rng));
    std::uniform_int_distribution<int> pick(0, bn - 1);
    int v1 = pick(rng), v2 = pick(rng);
    if (v1 == v2) continue;
    TreeMoveOutcome out = tree_move(base, v1, v2, tree, 0, tol, margin);
    ++done;
    CheckStatus st = CheckStatus::Pass;
    std::string note;
    if (out.precondition_met) {
      if (out.contradicted) {
        st = CheckStatus::Fail;
        note = "qmin did not drop";
      } else if (!out.certified) {
        st = CheckStatus::Inconclusive;
        note = "gap within margin";
      }
    } else {
      note = "precondition not met";
    }
    rep.records.push_back(record_for(
        "Lemma2.4", json{{"n", out.before.order()}, {"v1", v1}, {"v2", v2}},
        st, out.before, std::nullopt, out.qmin_before, note));
  }
}

void sweep_lemma33(VerificationReport& rep, int budget_n) {
  for (int g : {5, 7, 9}) {
    for (const FamilyInstance& inst :
         curly_f_instances(g, std::min(budget_n, g + 6), 2, true)) {
      FView f(inst);
      int gm = gamma_of(inst.graph);
      for (int a = 1; a <= g; ++a) {
        CaseInfo c = classify_a(f, a);
        json params = shape_params(f);
        params["a"] = a;
        params["case"] = c.which;
        CheckStatus st = CheckStatus::Pass;
        std::string note;
        try {
          if (c.which == 1) {
            Graph x = script_x_graph(f, c.index == 1 ? f.t : c.index - 1);
            int gx = gamma_of(x);
            note = "gamma(X)=" + std::to_string(gx);
            if (c.index != 1) note += " interior-X";
            if (gx != gm) st = CheckStatus::Fail;
          } else if (c.which == 2) {
            int gA = gamma_of(g1_graph(f, a));
            int gB = gamma_of(g2_graph(f, a));
            note = "gamma(G1)=" + std::to_string(gA) +
                   " gamma(G2)=" + std::to_string(gB);
            if (gm > std::max(gA, gB)) st = CheckStatus::Fail;
          } else if (c.which == 3) {
            Graph sg = script_g_graph(f, c.index);
            int gs = gamma_of(sg);
            note = "gamma(SG)=" + std::to_string(gs) +
                   " next_spacing=" + std::to_string(c.next_spacing);
            // The proof's spacing cases: equality at spacing 1-2, one more
            // at 3, and never below gamma(G).
            if (c.next_spacing <= 2 && gs != gm) st = CheckStatus::Fail;
            if (c.next_spacing == 3 && gs != gm + 1) st = CheckStatus::Fail;
            if (c.next_spacing >= 4 && gs < gm) st = CheckStatus::Fail;
          } else {
            int gA = gamma_of(g1_graph(f, a));
            note = "gamma(G1)=" + std::to_string(gA);
            if (gm > gA) st = CheckStatus::Fail;
          }
        } catch (const Error& e) {
          st = CheckStatus::Inconclusive;
          note = std::string("transform unavailable: ") + e.what();
        }
        rep.records.push_back(
            record_for("Lemma3.3", params, st, inst.graph, gm, std::nullopt,
                       note));
      }
    }
  }
}

void sweep_thm34(VerificationReport& rep, int budget_n) {
  for (int eps = 3; eps <= std::min(10, budget_n - 1); ++eps) {
    for (int k = 0; k <= std::min(4, eps - 2); ++k) {
      std::vector<int> positions(static_cast<size_t>(eps - 2));
      for (int i = 0; i < eps - 2; ++i) positions[static_cast<size_t>(i)] = i + 1;
      // All k-subsets of 1..eps-2.
      std::vector<int> idx(static_cast<size_t>(k));
      for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
      auto next_comb = [&]() {
        int i = k - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == eps - 2 - k + i) --i;
        if (i < 0) return false;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j)
          idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
        return true;
      };
      bool more = true;
      while (more) {
        std::vector<int> a;
        for (int i = 0; i < k; ++i)
          a.push_back(positions[static_cast<size_t>(idx[static_cast<size_t>(i)])]);
        for (int extra = 0; extra <= 1; ++extra) {
          int n = eps + k + extra + (eps == 3 ? 1 : 0);
          if (n > budget_n + 6) continue;
          FamilyInstance h1 = families::make_h_family(1, eps, k, a, n);
          FamilyInstance h2 = families::make_h_family(2, eps, k, {}, n);
          int g1v = gamma_of(h1.graph), g2v = gamma_of(h2.graph);
          CheckStatus st = g1v <= g2v ? CheckStatus::Pass : CheckStatus::Fail;
          rep.records.push_back(record_for(
              "Thm3.4",
              json{{"eps", eps}, {"k", k}, {"a", a}, {"n", n}}, st, h1.graph,
              g1v, std::nullopt, "gamma(H2)=" + std::to_string(g2v)));
        }
        more = k > 0 && next_comb();
        if (k == 0) break;
      }
    }
  }
}

void sweep_thm35(VerificationReport& rep, int max_eps, int max_k) {
  for (int eps = 3; eps <= max_eps; ++eps) {
    for (int k = 0; k <= std::min(max_k, eps - 2); ++k) {
      for (int extra = 0; extra <= 2; ++extra) {
        int n = eps + k + extra + (eps == 3 ? 1 : 0);
        if (n > 24) continue;
        FamilyInstance h2 = families::make_h_family(2, eps, k, {}, n);
        int g2v = gamma_of(h2.graph);
        FamilySpec spec;
        spec.kind = FamilyKind::H2;
        spec.eps = eps;
        spec.k = k;
        spec.n = n;
        int formula = *domination::closed_form_gamma(spec);
        json params{{"eps", eps}, {"k", k}, {"n", n}};
        rep.records.push_back(record_for(
            "Thm3.5(i-ii)", params,
            g2v == formula ? CheckStatus::Pass : CheckStatus::Fail, h2.graph,
            g2v, std::nullopt, "formula=" + std::to_string(formula)));
        if (k >= 1 && extra >= 1) {
          FamilyInstance h3 = families::make_h_family(3, eps, k, {}, n);
          int g3v = gamma_of(h3.graph);
          rep.records.push_back(record_for(
              "Thm3.5(iii)", params,
              g2v <= g3v ? CheckStatus::Pass : CheckStatus::Fail, h3.graph,
              g3v, std::nullopt, "gamma(H2)=" + std::to_string(g2v)));
        }
        if (k >= 1) {
          FamilyInstance h4 = families::make_h_family(4, eps, k, {}, n);
          int g4v = gamma_of(h4.graph);
          bool integral = eps - k - 4 >= 0 && (eps - k - 4) % 3 == 0;
          int expected = (eps - k - 1 <= 2 || !integral) ? g2v - 1 : g2v;
          rep.records.push_back(record_for(
              "Thm3.5(iv-v)", params,
              g4v == expected ? CheckStatus::Pass : CheckStatus::Fail,
              h4.graph, g4v, std::nullopt,
              "gamma(H2)=" + std::to_string(g2v)));
          if (k >= 2 && eps - k - 1 >= 3 && integral) {
            FamilyInstance h5 = families::make_h_family(5, eps, k, {}, n);
            int g5v = gamma_of(h5.graph);
            rep.records.push_back(record_for(
                "Thm3.5(v)", params,
                g5v == g2v - 1 ? CheckStatus::Pass : CheckStatus::Fail,
                h5.graph, g5v, std::nullopt,
                "gamma(H2)=" + std::to_string(g2v)));
          }
        }
      }
    }
  }
}

void sweep_lemma37(VerificationReport& rep, int max_g) {
  for (int g = 3; g <= max_g; ++g) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << g); ++mask) {
      // Pendant positions; the lollipop path end acts as the pendant of the
      // highest chosen position.
      std::vector<int> chosen;
      for (int b = 0; b < g; ++b)
        if ((mask >> b) & 1) chosen.push_back(b + 1);
      int k = static_cast<int>(chosen.size());
      if (g + 1 + k - 1 > 30) continue;
      // Rotate so the largest chosen position is g (hosts P).
      int shift = g - chosen.back();
      FamilySpec spec;
      spec.kind = FamilyKind::CurlyFCirc;
      spec.g = g;
      spec.l = 1;
      for (size_t i = 0; i + 1 < chosen.size(); ++i)
        spec.attach.push_back(chosen[i] + shift);
      FamilyInstance inst = families::make(spec);
      int gm = gamma_of(inst.graph);
      int bound = k + std::max(0, domination::ceil_div(g - k - 2, 3));
      CheckStatus st = gm <= bound ? CheckStatus::Pass : CheckStatus::Fail;
      std::string note = "bound=" + std::to_string(bound);
      // Equality for one consecutive arc (the G* of the lemma).
      auto cf = domination::closed_form_gamma(inst.spec);
      if (cf && *cf != bound) st = CheckStatus::Fail;
      if (cf && gm != *cf) {
        st = CheckStatus::Fail;
        note += " consecutive arc but gamma != formula";
      }
      rep.records.push_back(record_for(
          "Lemma3.7", json{{"g", g}, {"k", k}, {"positions", chosen}}, st,
          inst.graph, gm, std::nullopt, note));
    }
  }
}

void sweep_lemma38(VerificationReport& rep, int budget_n) {
  for (int g : {5, 7, 9}) {
    if (g + 1 > budget_n) continue;
    for (const FamilyInstance& inst :
         curly_f_instances(g, budget_n, 3, false)) {
      int n = inst.graph.order();
      if (n % 2 == 0) continue;
      int gm = gamma_of(inst.graph);
      if (2 * gm != n - 1) continue;
      FView f(inst);
      int fcount = f.g - f.t;
      json params = shape_params(f);
      params["f"] = fcount;
      CheckStatus st = CheckStatus::Pass;
      std::string note;
      if (fcount == f.g) {
        if (f.g != 5) {
          st = CheckStatus::Fail;
          note = "f = g with g != 5";
        }
      } else if (fcount > 3 || fcount == 2) {
        st = CheckStatus::Fail;
        note = "f out of the allowed set";
      } else if (fcount == 3) {
        // The three non-p-dominators must be consecutive and everything
        // else (cycle and path short of v_{g+l}) must dominate a pendant.
        std::vector<bool> isr(static_cast<size_t>(f.g) + 1, false);
        for (int r : f.shape.r) isr[static_cast<size_t>(r)] = true;
        bool consecutive = false;
        for (int start = 1; start <= f.g; ++start) {
          bool run = true;
          for (int j = 0; j < 3; ++j)
            if (isr[static_cast<size_t>((start + j - 1) % f.g + 1)]) run = false;
          if (run) consecutive = true;
        }
        if (!consecutive) {
          st = CheckStatus::Fail;
          note = "three non-p-dominators not consecutive";
        }
        for (int pos = f.g + 1; pos <= f.g + f.l - 1 && st == CheckStatus::Pass;
             ++pos)
          if (!f.shape.pendants.contains(pos)) {
            st = CheckStatus::Fail;
            note = "path vertex without pendant at position " +
                   std::to_string(pos);
          }
      }
      rep.records.push_back(
          record_for("Lemma3.8", params, st, inst.graph, gm));
    }
  }
}

void sweep_thm39(VerificationReport& rep, int max_n) {
  for (int n = 5; n <= max_n; n += 2) {
    FamilyInstance k = families::make_theorem39_k(n);
    FamilySpec cyc;
    cyc.kind = FamilyKind::Cycle;
    cyc.n = n;
    Graph c = families::make(cyc).graph;
    int gk = gamma_of(k.graph), gc = gamma_of(c);
    CheckStatus st = gk == gc ? CheckStatus::Pass : CheckStatus::Fail;
    rep.records.push_back(record_for("Thm3.9", json{{"n", n}}, st, k.graph,
                                     gk, std::nullopt,
                                     "gamma(C)=" + std::to_string(gc)));
  }
}

void sweep_thm42(VerificationReport& rep, int budget_n, double tol,
                 double margin, int workers) {
  std::vector<FamilyInstance> instances;
  for (int g : {5, 7}) {
    auto more = curly_f_instances(g, budget_n, 2, true);
    instances.insert(instances.end(), more.begin(), more.end());
  }
  std::vector<Record> records(instances.size());
  parallel_for(instances.size(), workers, [&](std::size_t idx) {
    const FamilyInstance& inst = instances[idx];
    FView f(inst);
    const Graph& gin = inst.graph;
    spectra::SpectralCert cert = spectra::q_spectrum(gin, tol);
    int gm = gamma_of(gin);
    // Anchor at the cycle minimum of the eigenvector: min at position a+1.
    int minpos = 1;
    for (int p = 2; p <= f.g; ++p)
      if (std::abs(cert.eigvec(f.cyc(p))) <
          std::abs(cert.eigvec(f.cyc(minpos))))
        minpos = p;
    int a = (minpos - 2 + f.g) % f.g + 1;
    std::vector<Graph> candidates;
    auto push = [&](auto&& builder) {
      try {
        candidates.push_back(builder());
      } catch (const Error&) {
      }
    };
    for (int anchor : {a, minpos}) {
      push([&] { return g1_graph(f, anchor); });
      push([&] { return g2_graph(f, anchor); });
      push([&] { return g1_mirror_graph(f, anchor); });
      push([&] { return g2_mirror_graph(f, anchor); });
    }
    push([&] { return script_x_tail(f); });
    push([&] { return script_g_graph(f, 1); });
    bool ok = false;
    std::string used;
    for (size_t ci = 0; ci < candidates.size(); ++ci) {
      const Graph& h = candidates[ci];
      if (!is_unicyclic(h) || profile(h).girth != 3) continue;
      if (gamma_of(h) < gm) continue;
      double qh = spectra::q_spectrum(h, tol).q_min;
      if (qh < cert.q_min - margin) {
        ok = true;
        used = "candidate " + std::to_string(ci);
        break;
      }
    }
    records[idx] = record_for("Thm4.2", shape_params(f),
                              ok ? CheckStatus::Pass : CheckStatus::Fail, gin,
                              gm, cert.q_min, used);
  });
  rep.records.insert(rep.records.end(), records.begin(), records.end());
}

void sweep_lemma49(VerificationReport& rep, int budget_n, double tol,
                   double margin, int workers) {
  // The lemma covers every curly F_{5,l} of order >= 6, circ or not.
  std::vector<FamilyInstance> instances =
      curly_f_instances(5, std::min(budget_n, 11), 3, false);
  std::vector<Record> records(instances.size());
  parallel_for(instances.size(), workers, [&](std::size_t idx) {
    const FamilyInstance& inst = instances[idx];
    FView f(inst);
    const Graph& gin = inst.graph;
    if (gin.order() < 6) {
      records[idx] = record_for("Lemma4.9", shape_params(f),
                                CheckStatus::Pass, gin, std::nullopt,
                                std::nullopt, "below order 6, skipped");
      return;
    }
    double q0 = spectra::q_spectrum(gin, tol).q_min;
    int gm = gamma_of(gin);
    bool ok = false;
    // Remove one cycle edge, close a triangle with the neighbor two steps
    // away, optionally relocating one cycle pendant.
    for (int p = 1; p <= f.g && !ok; ++p) {
      for (int variant = 0; variant < 2 && !ok; ++variant) {
        Graph h = gin;
        try {
          h = h.delete_edge(f.cyc(p), f.cyc(p + 1));
          h = variant == 0 ? h.add_edge(f.cyc(p), f.cyc(p - 2))
                           : h.add_edge(f.cyc(p + 1), f.cyc(p + 3));
        } catch (const Error&) {
          continue;
        }
        std::vector<Graph> variants{h};
        for (auto& [pos, ps] : f.shape.pendants) {
          if (pos > f.g) continue;
          int pv = ps.front();
          for (int tgt = 1; tgt <= f.g; ++tgt) {
            if (tgt == pos) continue;
            try {
              variants.push_back(h.delete_edge(f.cyc(pos), pv)
                                     .add_edge(f.cyc(tgt), pv));
            } catch (const Error&) {
            }
          }
        }
        for (const Graph& cand : variants) {
          if (!is_unicyclic(cand) || profile(cand).girth != 3) continue;
          if (gamma_of(cand) < gm) continue;
          if (spectra::q_spectrum(cand, tol).q_min < q0 - margin) {
            ok = true;
            break;
          }
        }
      }
    }
    records[idx] =
        record_for("Lemma4.9", shape_params(f),
                   ok ? CheckStatus::Pass : CheckStatus::Fail, gin, gm, q0);
  });
  rep.records.insert(rep.records.end(), records.begin(), records.end());
}

void sweep_lemma411(VerificationReport& rep, int max_n, double tol,
                    double margin) {
  for (int n = 5; n <= max_n; n += 2) {
    FamilySpec cyc;
    cyc.kind = FamilyKind::Cycle;
    cyc.n = n;
    FamilyInstance c = families::make(cyc);
    TransformSpec t;
    t.kind = TransformKind::KFromCycle;
    TransformOutcome out = apply(c, t, tol, margin);
    CheckStatus st = CheckStatus::Pass;
    std::string note;
    if (out.contradicted || out.gamma_out != out.gamma_in) {
      st = CheckStatus::Fail;
    } else if (!out.certified) {
      st = CheckStatus::Inconclusive;
      note = "qmin gap within margin";
    }
    rep.records.push_back(record_for(
        "Lemma4.11", json{{"n", n}}, st, out.graph_out, out.gamma_out,
        out.qmin_out,
        note.empty() ? "qmin(C)=" + std::to_string(out.qmin_in) : note));
  }
}

}  // namespace

std::vector<std::string> transform_lemma_ids() {
  return {"Lemma3.1", "Lemma2.4", "Lemma3.3", "Thm3.4",   "Thm3.5",
          "Lemma3.7", "Lemma3.8", "Thm3.9",   "Thm4.2",   "Lemma4.9",
          "Lemma4.11"};
}

VerificationReport verify_transform_lemma(const std::string& id, int budget_n,
                                          double tol, double margin,
                                          int workers) {
  VerificationReport rep;
  rep.id = id;
  if (id == "Lemma3.1")
    sweep_lemma31(rep, std::max(budget_n, 8));
  else if (id == "Lemma2.4")
    sweep_lemma24(rep, std::max(budget_n, 8), tol, margin);
  else if (id == "Lemma3.3")
    sweep_lemma33(rep, budget_n);
  else if (id == "Thm3.4")
    sweep_thm34(rep, budget_n);
  else if (id == "Thm3.5")
    sweep_thm35(rep, 15, 6);
  else if (id == "Lemma3.7")
    sweep_lemma37(rep, 13);
  else if (id == "Lemma3.8")
    sweep_lemma38(rep, std::max(budget_n, 11));
  else if (id == "Thm3.9")
    sweep_thm39(rep, 25);
  else if (id == "Thm4.2")
    sweep_thm42(rep, budget_n, tol, margin, workers);
  else if (id == "Lemma4.9")
    sweep_lemma49(rep, budget_n, tol, margin, workers);
  else if (id == "Lemma4.11")
    sweep_lemma411(rep, 25, tol, margin);
  else
    throw Error(ErrorCode::UnknownTheorem, "unknown transform lemma " + id);
  return rep;
}

}  // namespace qdom::perturb
