#include "precondaor/aor.hpp"

#include <algorithm>
#include <cmath>

namespace precondaor {

namespace {

void check_diagonal(const Matrix& a) {
  for (int i = 0; i < a.order(); ++i)
    if (a(i, i) == 0.0)
      throw SingularMatrixError("diagonal entry " + std::to_string(i) +
                                " is zero; D - gamma*L is singular");
}

/// Solves (D - gamma L) y = rhs by forward substitution, in place. The
/// below-diagonal entries of D - gamma L are gamma * a(i, j).
void forward_solve(const Matrix& a, double gamma, std::vector<double>& rhs) {
  const int n = a.order();
  for (int i = 0; i < n; ++i) {
    double s = rhs[i];
    for (int j = 0; j < i; ++j) s -= gamma * a(i, j) * rhs[j];
    rhs[i] = s / a(i, i);
  }
}

double max_norm(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

const char* to_string(SplittingKind k) {
  switch (k) {
    case SplittingKind::regular: return "regular";
    case SplittingKind::weak_regular: return "weak_regular";
    case SplittingKind::nonnegative: return "nonnegative";
    case SplittingKind::none: return "none";
  }
  return "?";
}

SplittingKind classify_splitting(const Matrix& a, const Splitting& s, double eps) {
  if ((s.m - s.n_mat).max_abs_diff(a) > 1e-13 * std::max(1.0, a.max_abs()))
    throw std::invalid_argument("splitting does not reproduce the source matrix");
  Matrix minv = inverse(s.m);
  const bool minv_nonneg = cone_sign(minv, eps) != ConeOrder::NONE;
  const bool n_nonneg = cone_sign(s.n_mat, eps) != ConeOrder::NONE;
  const bool t_nonneg = cone_sign(minv * s.n_mat, eps) != ConeOrder::NONE;
  if (minv_nonneg && n_nonneg) return SplittingKind::regular;
  if (minv_nonneg && t_nonneg) return SplittingKind::weak_regular;
  if (t_nonneg) return SplittingKind::nonnegative;
  return SplittingKind::none;
}

Splitting aor_splitting(const Matrix& a, const AorParams& p) {
  check_diagonal(a);
  const int n = a.order();
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = a(i, i) / p.omega;
    for (int j = 0; j < i; ++j) m(i, j) = p.gamma * a(i, j) / p.omega;
  }
  Splitting s{m, m - a, SplittingKind::none};
  s.kind = classify_splitting(a, s);
  return s;
}

Matrix aor_iteration_matrix(const Matrix& a, const AorParams& p) {
  check_diagonal(a);
  const int n = a.order();
  // N = (1/omega)[(1-omega)D + (omega-gamma)L + omega U] column by column;
  // each column is pushed through (D - gamma L) y = omega * N e_j.
  Matrix t(n);
  std::vector<double> col(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double v = 0.0;
      if (i == j)
        v = (1.0 - p.omega) * a(i, i);
      else if (i > j)
        v = (p.omega - p.gamma) * (-a(i, j));
      else
        v = p.omega * (-a(i, j));
      col[i] = v;
    }
    forward_solve(a, p.gamma, col);
    for (int i = 0; i < n; ++i) t(i, j) = col[i];
  }
  return t;
}

SolveReport aor_solve(const Matrix& a, const std::vector<double>& b,
                      const AorParams& p, const std::vector<double>& x0,
                      double tol, int max_iter) {
  const int n = a.order();
  if (static_cast<int>(b.size()) != n || static_cast<int>(x0.size()) != n)
    throw DimensionError("aor_solve: vector lengths do not match matrix order");
  check_diagonal(a);

  const Matrix t = aor_iteration_matrix(a, p);
  std::vector<double> c(b);
  for (double& v : c) v *= p.omega;
  forward_solve(a, p.gamma, c);

  SolveReport rep;
  rep.solution = x0;
  const double b_norm = max_norm(b);
  const double target = tol * (1.0 + b_norm);

  auto residual = [&](const std::vector<double>& x) {
    const std::vector<double> ax = a.apply(x);
    double r = 0.0;
    for (int i = 0; i < n; ++i) r = std::max(r, std::abs(ax[i] - b[i]));
    return r;
  };

  double res = residual(rep.solution);
  rep.residual_history.push_back(res);
  const double divergence_cap = 1e6 * std::max(res, 1.0);

  while (rep.iterations < max_iter) {
    if (res <= target) {
      rep.converged = true;
      return rep;
    }
    if (res > divergence_cap || !std::isfinite(res)) return rep;
    std::vector<double> next = t.apply(rep.solution);
    for (int i = 0; i < n; ++i) next[i] += c[i];
    rep.solution = std::move(next);
    ++rep.iterations;
    res = residual(rep.solution);
    rep.residual_history.push_back(res);
  }
  rep.converged = res <= target;
  return rep;
}

double extrapolate_rho(double rho_gamma, double gamma, double omega) {
  if (gamma == 0.0)
    throw std::domain_error("extrapolate_rho requires gamma != 0");
  const double ratio = omega / gamma;
  return 1.0 - ratio + ratio * rho_gamma;
}

}  // namespace precondaor
