#include "qdom/spectra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>

#include <nlohmann/json.hpp>

namespace qdom::spectra {

Eigen::MatrixXd q_matrix(const Graph& g) {
  int n = g.order();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    q(v, v) = g.degree(v);
    for (int w : set_to_vector(g.neighbors(v))) q(v, w) = 1.0;
  }
  return q;
}

SpectralCert q_spectrum(const Graph& g, double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-6))
    throw Error(ErrorCode::OutOfRange, "tolerance must lie in [1e-14, 1e-6]");
  int n = g.order();
  Eigen::MatrixXd q = q_matrix(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::NoConvergence, "symmetric eigensolver failed");

  SpectralCert cert;
  cert.tol = tol;
  cert.spectrum.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  double lambda = es.eigenvalues()(0);
  Eigen::VectorXd x = es.eigenvectors().col(0);
  x.normalize();
  double residual = (q * x - lambda * x).norm();

  // Inverse iteration on Q - (lambda - eps) I until the residual certifies.
  int iter = 0;
  const int cap = 100 * n;
  while (residual > tol) {
    if (++iter > cap)
      throw Error(ErrorCode::NoConvergence,
                  "inverse iteration did not reach the requested tolerance");
    double eps = std::max(tol, 1e-12) * std::max(1.0, std::abs(lambda));
    Eigen::MatrixXd shifted =
        q - (lambda - eps) * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd y = shifted.fullPivLu().solve(x);
    if (!y.allFinite() || y.norm() == 0.0)
      throw Error(ErrorCode::NoConvergence, "inverse iteration degenerated");
    y.normalize();
    x = y;
    lambda = x.dot(q * x);
    residual = (q * x - lambda * x).norm();
  }

  // Sign freedom: make the largest-magnitude coordinate positive.
  int arg = 0;
  for (int v = 1; v < n; ++v)
    if (std::abs(x(v)) > std::abs(x(arg))) arg = v;
  if (x(arg) < 0) x = -x;

  cert.q_min = lambda;
  cert.eigvec = std::move(x);
  cert.residual = residual;
  return cert;
}

double rayleigh(const Graph& g, const Eigen::VectorXd& x) {
  if (x.size() != g.order())
    throw Error(ErrorCode::DimensionMismatch,
                "vector length does not match the graph order");
  double sum = 0.0;
  for (auto [i, j] : g.edges()) {
    double s = x(i) + x(j);
    sum += s * s;
  }
  return sum;
}

bool interlacing_check(const Graph& g, std::pair<int, int> e, double tol) {
  Graph h = g.delete_edge(e.first, e.second);  // throws EdgeAbsent
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eg(q_matrix(g));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eh(q_matrix(h));
  int n = g.order();
  // Descending: q_1 >= ... >= q_n and s_1 >= ... >= s_n.
  auto desc = [n](const Eigen::VectorXd& v, int i) { return v(n - 1 - i); };
  const Eigen::VectorXd& q = eg.eigenvalues();
  const Eigen::VectorXd& s = eh.eigenvalues();
  if (desc(s, n - 1) < -tol) return false;  // 0 <= s_n
  for (int i = 0; i < n; ++i) {
    if (desc(s, i) > desc(q, i) + tol) return false;      // s_i <= q_i
    if (i > 0 && desc(q, i) > desc(s, i - 1) + tol) return false;  // q_i <= s_{i-1}
  }
  return true;
}

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

void EigvecStructureReport::merge(CheckStatus s, const std::string& what) {
  if (s == CheckStatus::Fail) {
    status = CheckStatus::Fail;
    violations.push_back(what);
  } else if (s == CheckStatus::Inconclusive) {
    if (status != CheckStatus::Fail) status = CheckStatus::Inconclusive;
    inconclusive.push_back(what);
  }
}

namespace {

struct Branch {
  int root;                 // cycle vertex
  std::vector<int> order;   // BFS order, root excluded
  std::vector<int> parent;  // same indexing as `order`
};

std::vector<Branch> hanging_branches(const Graph& g,
                                     const std::vector<int>& cycle) {
  VertexSet on_cycle = 0;
  for (int v : cycle) on_cycle |= VertexSet{1} << v;
  std::vector<Branch> out;
  for (int r : cycle) {
    Branch b{r, {}, {}};
    std::deque<std::pair<int, int>> queue;
    for (int c : set_to_vector(g.neighbors(r) & ~on_cycle))
      queue.emplace_back(c, r);
    VertexSet seen = on_cycle;
    while (!queue.empty()) {
      auto [v, p] = queue.front();
      queue.pop_front();
      seen |= VertexSet{1} << v;
      b.order.push_back(v);
      b.parent.push_back(p);
      for (int c : set_to_vector(g.neighbors(v) & ~seen))
        queue.emplace_back(c, v);
    }
    if (!b.order.empty()) out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

EigvecStructureReport eigvec_structure_check(const Graph& g,
                                             const SpectralCert& cert,
                                             double theta) {
  if (!is_unicyclic(g) || profile(g).bipartite)
    throw Error(ErrorCode::PreconditionViolated,
                "structure checks need a nonbipartite unicyclic graph");
  if (cert.residual > cert.tol)
    throw Error(ErrorCode::PreconditionViolated,
                "eigenvector residual exceeds its tolerance");
  EigvecStructureReport rep;
  if (cert.spectrum.size() >= 2 &&
      cert.spectrum[1] - cert.spectrum[0] <= 100.0 * cert.tol) {
    rep.simple_least = false;
    rep.status = CheckStatus::Inconclusive;
    rep.inconclusive.push_back("least eigenvalue not simple within 100*tol");
    return rep;
  }

  const Eigen::VectorXd& x = cert.eigvec;
  auto mag = [&](int v) { return std::abs(x(v)); };
  std::vector<int> cycle = unicycle(g);
  int glen = static_cast<int>(cycle.size());

  // (a) Lemma 4.1(i): strict gap between cycle min and cycle max.
  int mpos = 0, spos = 0;
  for (int i = 1; i < glen; ++i) {
    if (mag(cycle[static_cast<size_t>(i)]) < mag(cycle[static_cast<size_t>(mpos)])) mpos = i;
    if (mag(cycle[static_cast<size_t>(i)]) > mag(cycle[static_cast<size_t>(spos)])) spos = i;
  }
  double lo = mag(cycle[static_cast<size_t>(mpos)]);
  double hi = mag(cycle[static_cast<size_t>(spos)]);
  if (hi - lo <= theta)
    rep.merge(CheckStatus::Inconclusive,
              "cycle min/max gap within theta (Lemma 4.1(i))");
  int cycle_zeros = 0;
  for (int i = 0; i < glen; ++i)
    if (mag(cycle[static_cast<size_t>(i)]) < theta) ++cycle_zeros;
  if (cycle_zeros >= 2)
    rep.merge(CheckStatus::Fail,
              "several vanishing cycle entries (Lemma 4.1(ii))");

  std::vector<Branch> branches = hanging_branches(g, cycle);

  // Lemma 2.5: some branch root carries a nonzero entry.
  if (!branches.empty()) {
    double best = 0.0;
    for (const Branch& b : branches) best = std::max(best, mag(b.root));
    if (best < theta)
      rep.merge(CheckStatus::Fail,
                "all branch roots vanish (Lemma 2.5)");
  }

  // Lemma 2.2 / 2.3 on every hanging tree.
  for (const Branch& b : branches) {
    bool root_zero = mag(b.root) < theta;
    bool any_zero = false, any_nonzero = false;
    for (int v : b.order) {
      if (mag(v) < theta)
        any_zero = true;
      else
        any_nonzero = true;
    }
    if (root_zero && any_nonzero) {
      rep.merge(CheckStatus::Fail,
                "zero-rooted branch at " + std::to_string(b.root) +
                    " has a nonzero entry (Lemma 2.2(i))");
      continue;
    }
    if (root_zero) continue;
    if (any_zero) {
      rep.merge(CheckStatus::Fail,
                "nonzero-rooted branch at " + std::to_string(b.root) +
                    " has a vanishing entry (Lemma 2.2(ii))");
      continue;
    }
    for (size_t i = 0; i < b.order.size(); ++i) {
      int v = b.order[i], p = b.parent[i];
      if (x(v) * x(p) > 0.0)
        rep.merge(CheckStatus::Fail,
                  "branch edge (" + std::to_string(p) + "," +
                      std::to_string(v) + ") has matching signs (Lemma 2.2)");
      double gap = mag(v) - mag(p);
      if (gap <= -theta)
        rep.merge(CheckStatus::Fail,
                  "branch entry shrinks away from the root at " +
                      std::to_string(v) + " (Lemma 2.3)");
      else if (gap < theta)
        rep.merge(CheckStatus::Inconclusive,
                  "branch growth within theta at " + std::to_string(v) +
                      " (Lemma 2.3)");
    }
  }

  // Lemma 4.1(ii)/(iii): behavior around the cycle minimum.
  auto cyc = [&](int i) {
    return cycle[static_cast<size_t>(((i % glen) + glen) % glen)];
  };
  if (lo < theta) {
    int a = cyc(mpos - 1), b = cyc(mpos + 1);
    if (mag(a) < theta || mag(b) < theta)
      rep.merge(CheckStatus::Fail,
                "neighbor of the vanishing cycle minimum vanishes "
                "(Lemma 4.1(ii))");
    else if (std::abs(x(a) + x(b)) > theta)
      rep.merge(CheckStatus::Fail,
                "neighbors of the vanishing cycle minimum do not cancel "
                "(Lemma 4.1(ii))");
  }
  // Sign pattern: every cycle edge with two nonzero entries has opposite
  // signs, except exactly one edge incident to the minimum.
  {
    int nonneg_edges = 0;
    bool away_from_min = false;
    for (int i = 0; i < glen; ++i) {
      int u = cyc(i), w = cyc(i + 1);
      if (mag(u) < theta || mag(w) < theta) continue;
      if (x(u) * x(w) > 0.0) {
        ++nonneg_edges;
        if (u != cyc(mpos) && w != cyc(mpos)) away_from_min = true;
      }
    }
    if (lo >= theta && nonneg_edges != 1)
      rep.merge(CheckStatus::Fail,
                "expected exactly one same-sign cycle edge, found " +
                    std::to_string(nonneg_edges) + " (Lemma 4.1(iii))");
    if (away_from_min)
      rep.merge(CheckStatus::Fail,
                "same-sign cycle edge away from the minimum (Lemma 4.1)");
  }
  // Arc monotonicity from the minimum to the maximum, both ways. Interior
  // steps must grow; the step out of the minimum and into the maximum may
  // tie.
  if (lo >= theta && mpos != spos) {
    for (int dir : {1, -1}) {
      int steps = dir == 1 ? (spos - mpos + glen) % glen
                           : (mpos - spos + glen) % glen;
      for (int k = 0; k < steps; ++k) {
        int u = cyc(mpos + dir * k), w = cyc(mpos + dir * (k + 1));
        double gap = mag(w) - mag(u);
        bool endpoint = (k == 0) || (k == steps - 1);
        if (gap <= -theta)
          rep.merge(CheckStatus::Fail,
                    "cycle entries shrink toward the maximum at " +
                        std::to_string(w) + " (Lemma 4.1(iii))");
        else if (gap < theta && !endpoint)
          rep.merge(CheckStatus::Inconclusive,
                    "cycle growth within theta at " + std::to_string(w) +
                        " (Lemma 4.1(iii))");
      }
    }
  }

  // Lemma 4.3: triangle F-graphs carry their cycle maximum at the path
  // junction v_3.
  if (glen == 3) {
    auto shape = families::recognize_curly_f(g, true);
    if (shape) {
      int junction = shape->vertex(3);
      for (int i = 1; i <= 3; ++i) {
        int v = shape->vertex(i);
        if (mag(v) > mag(junction) + theta)
          rep.merge(CheckStatus::Fail,
                    "triangle entry at " + std::to_string(v) +
                        " exceeds the junction (Lemma 4.3)");
      }
    }
  }
  return rep;
}

std::string to_json(const SpectralCert& cert) {
  nlohmann::json j{{"q_min", cert.q_min},
                   {"residual", cert.residual},
                   {"tol", cert.tol},
                   {"spectrum", cert.spectrum}};
  std::vector<double> vec(cert.eigvec.data(),
                          cert.eigvec.data() + cert.eigvec.size());
  j["eigvec"] = vec;
  return j.dump();
}

}  // namespace qdom::spectra
