#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "qdom/families.hpp"
#include "qdom/graph.hpp"

namespace qdom::spectra {

/// Signless Laplacian Q = D + A as a dense symmetric matrix.
Eigen::MatrixXd q_matrix(const Graph& g);

struct SpectralCert {
  double q_min = 0.0;
  Eigen::VectorXd eigvec;        // unit eigenvector of q_min
  double residual = 0.0;         // ||Q x - q_min x||_2
  double tol = 0.0;
  std::vector<double> spectrum;  // all eigenvalues, ascending
};

/// Full symmetric eigensolution (Householder tridiagonalization + implicit
/// shifts) with the least eigenvector polished by inverse iteration on
/// Q - (q_min - eps) I until the residual certifies. The eigenvector is sign
/// normalized so its largest-magnitude entry is positive.
SpectralCert q_spectrum(const Graph& g, double tol = 1e-10);

/// X^T Q X via the edge sum  sum_{ij in E} (x_i + x_j)^2.
double rayleigh(const Graph& g, const Eigen::VectorXd& x);

/// Lemma-style edge interlacing: with q_1 >= ... >= q_n the Q-eigenvalues of
/// g and s_1 >= ... >= s_n those of g - e, checks
/// 0 <= s_n <= q_n <= s_{n-1} <= ... <= s_1 <= q_1 within tol.
bool interlacing_check(const Graph& g, std::pair<int, int> e,
                       double tol = 1e-8);

enum class CheckStatus { Pass, Fail, Inconclusive };

std::string status_name(CheckStatus s);

struct EigvecStructureReport {
  CheckStatus status = CheckStatus::Pass;
  bool simple_least = true;
  std::vector<std::string> violations;     // FAIL details
  std::vector<std::string> inconclusive;   // margin ties
  void merge(CheckStatus s, const std::string& what);
};

/// Runtime checks of the least-eigenvector structure statements on a
/// nonbipartite unicyclic graph: cycle min strictly below cycle max, zero
/// bipartite branches, strict growth along nonzero branches, nonvanishing
/// branch roots, alternating cycle signs with one non-negative edge at the
/// minimum, and for triangle F-graphs the junction carrying the triangle
/// maximum. Entries within theta of zero count as structural zeros; a
/// clustered least eigenvalue yields Inconclusive.
EigvecStructureReport eigvec_structure_check(const Graph& g,
                                             const SpectralCert& cert,
                                             double theta = 1e-7);

std::string to_json(const SpectralCert& cert);

}  // namespace qdom::spectra
