#pragma once

#include <vector>

#include "precondaor/matrix.hpp"

namespace precondaor {

/// Relaxation pair (gamma, omega) of the two-parameter stationary iteration.
/// (omega, omega) is SOR, (1, 1) Gauss-Seidel, (0, 1) Jacobi. omega must be
/// nonzero; pairs outside 0 < omega <= 1, 0 <= gamma <= 1 are accepted and
/// flagged through extended_range.
struct AorParams {
  double gamma = 1.0;
  double omega = 1.0;
  bool extended_range = false;

  AorParams(double g, double w) : gamma(g), omega(w) {
    if (omega == 0.0) throw std::invalid_argument("omega must be nonzero");
    extended_range = !(omega > 0.0 && omega <= 1.0 && gamma >= 0.0 && gamma <= 1.0);
  }
};

enum class SplittingKind { regular, weak_regular, nonnegative, none };

const char* to_string(SplittingKind k);

/// A = m - n_mat; n_mat is constructed as m - a so the identity is exact.
struct Splitting {
  Matrix m;
  Matrix n_mat;
  SplittingKind kind = SplittingKind::none;
};

/// Strongest kind that holds at tolerance eps: regular means inverse(m) >= 0
/// and n >= 0, weak regular means inverse(m) >= 0 and inverse(m)*n >= 0,
/// nonnegative means inverse(m)*n >= 0.
SplittingKind classify_splitting(const Matrix& a, const Splitting& s,
                                 double eps = 1e-10);

/// M = (1/omega)(D - gamma L), N = M - A. Throws SingularMatrixError when a
/// diagonal entry of a vanishes.
Splitting aor_splitting(const Matrix& a, const AorParams& p);

/// T = M^-1 N computed by forward substitution against the columns of N.
Matrix aor_iteration_matrix(const Matrix& a, const AorParams& p);

struct SolveReport {
  std::vector<double> solution;
  std::vector<double> residual_history;
  int iterations = 0;
  bool converged = false;
};

/// Runs x <- T x + omega (D - gamma L)^-1 b until the max-norm residual of
/// the original system drops to tol * (1 + |b|_inf), the iteration budget is
/// exhausted, or the residual exceeds 1e6 times its initial value (divergence
/// cap, converged = false).
SolveReport aor_solve(const Matrix& a, const std::vector<double>& b,
                      const AorParams& p, const std::vector<double>& x0,
                      double tol = 1e-10, int max_iter = 10000);

/// Eigenvalue extrapolation 1 - omega/gamma + (omega/gamma) * rho_gamma.
/// gamma must be nonzero.
double extrapolate_rho(double rho_gamma, double gamma, double omega);

}  // namespace precondaor
