#include "precondaor/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace precondaor {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
  const int n = m.order();
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m(i, j);
  return out;
}

bool entrywise_nonnegative(const Matrix& t) {
  for (double v : t.entries())
    if (v < 0.0) return false;
  return true;
}

double max_norm(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

/// Unit max-norm, first maximal entry positive.
void normalize(std::vector<double>& x) {
  const double m = max_norm(x);
  if (m == 0.0) return;
  double scale = 1.0 / m;
  for (double v : x) {
    if (std::abs(v) == m) {
      if (v < 0.0) scale = -scale;
      break;
    }
  }
  for (double& v : x) v *= scale;
}

double residual_norm(const Matrix& t, const std::vector<double>& x, double rho) {
  const std::vector<double> y = t.apply(x);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    r = std::max(r, std::abs(y[i] - rho * x[i]));
  return r;
}

struct PowerOutcome {
  bool ok = false;
  double rho = 0.0;
  std::vector<double> vec;
  int iterations = 0;
};

// Power iteration for an entrywise nonnegative matrix. Accepts once the
// quotient is stable over three consecutive steps and the eigen-residual is
// within tolerance; restarts from a perturbed vector every stagnation window.
PowerOutcome power_iterate(const Matrix& t, double tol, int max_iter) {
  const int n = t.order();
  constexpr int kStagnationWindow = 200;

  PowerOutcome out;
  std::mt19937 rng(0x5eed);
  std::uniform_real_distribution<double> noise(0.0, 1.0);

  std::vector<double> x(n, 1.0);
  double quotient = 0.0;
  int stable = 0;
  int since_restart = 0;
  double best_rho = 0.0;

  for (int iter = 1; iter <= max_iter; ++iter) {
    std::vector<double> y = t.apply(x);
    const double ny = max_norm(y);
    out.iterations = iter;
    if (ny == 0.0) {
      // A nonnegative power of t annihilates a positive vector, so t is
      // nilpotent and the radius is exactly zero.
      out.ok = true;
      out.rho = 0.0;
      out.vec = std::move(x);
      normalize(out.vec);
      return out;
    }
    const double new_quotient = ny / max_norm(x);
    const double rel_change =
        std::abs(new_quotient - quotient) / std::max(1.0, new_quotient);
    stable = rel_change < tol ? stable + 1 : 0;
    quotient = new_quotient;
    best_rho = quotient;
    x = std::move(y);
    normalize(x);

    if (stable >= 3 &&
        residual_norm(t, x, quotient) <= tol * std::max(1.0, quotient)) {
      out.ok = true;
      out.rho = quotient;
      out.vec = x;
      return out;
    }

    if (++since_restart >= kStagnationWindow && stable == 0) {
      for (double& v : x) v += 0.1 * noise(rng);
      normalize(x);
      since_restart = 0;
    }
  }
  out.rho = best_rho;
  return out;
}

// Real eigenvector for the eigenvalue of largest modulus. For nonnegative
// matrices that eigenvalue is real, so the column of the eigenvector matrix
// with the largest-modulus, smallest-imaginary eigenvalue is taken.
bool dense_perron_vector(const Matrix& t, double& rho, std::vector<double>& vec) {
  const int n = t.order();
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(t), true);
  if (es.info() != Eigen::Success) return false;
  const auto vals = es.eigenvalues();
  rho = vals.cwiseAbs().maxCoeff();
  int pick = -1;
  double best_imag = std::numeric_limits<double>::max();
  for (int k = 0; k < n; ++k) {
    if (std::abs(vals[k]) < rho * (1.0 - 1e-10)) continue;
    const double im = std::abs(vals[k].imag());
    if (im < best_imag) {
      best_imag = im;
      pick = k;
    }
  }
  if (pick < 0) pick = 0;
  vec.resize(n);
  for (int i = 0; i < n; ++i) vec[i] = es.eigenvectors().col(pick)[i].real();
  normalize(vec);
  return true;
}

}  // namespace

double dense_radius(const Matrix& t) {
  if (t.order() == 1) return std::abs(t(0, 0));
  return to_eigen(t).eigenvalues().cwiseAbs().maxCoeff();
}

SpectralResult spectral_radius(const Matrix& t, double tol, int max_iter) {
  SpectralResult res;
  if (entrywise_nonnegative(t)) {
    PowerOutcome po = power_iterate(t, tol, max_iter);
    res.iterations = po.iterations;
    if (po.ok) {
      res.rho = po.rho;
      res.right_vec = std::move(po.vec);
      res.method = SpectralMethod::power;
      res.converged = true;
      return res;
    }
    res.rho = po.rho;
  }
  try {
    res.rho = dense_radius(t);
    res.method = SpectralMethod::dense_eig;
    res.converged = true;
    return res;
  } catch (const std::exception&) {
    throw ConvergenceError("spectral radius did not converge", res.rho);
  }
}

SpectralResult perron_pair(const Matrix& t, double tol, int max_iter) {
  if (!entrywise_nonnegative(t))
    throw std::invalid_argument("perron_pair requires an entrywise nonnegative matrix");

  SpectralResult res;

  PowerOutcome right = power_iterate(t, tol, max_iter);
  res.iterations = right.iterations;
  double rho = right.rho;
  std::vector<double> rvec = std::move(right.vec);
  bool dense = false;
  if (!right.ok) {
    if (!dense_perron_vector(t, rho, rvec))
      throw ConvergenceError("perron_pair right vector did not converge", right.rho);
    dense = true;
  }

  const Matrix tt = t.transpose();
  PowerOutcome left = power_iterate(tt, tol, max_iter);
  std::vector<double> lvec = std::move(left.vec);
  if (!left.ok) {
    double rho_l = 0.0;
    if (!dense_perron_vector(tt, rho_l, lvec))
      throw ConvergenceError("perron_pair left vector did not converge", left.rho);
    dense = true;
  }

  res.rho = rho;
  res.method = dense ? SpectralMethod::dense_eig : SpectralMethod::power;
  res.converged = true;
  res.right_vec = std::move(rvec);
  res.left_vec = std::move(lvec);

  if (is_irreducible(t, 0.0)) {
    for (double v : *res.right_vec)
      if (!(v > tol))
        throw ConvergenceError(
            "irreducible matrix produced a right Perron vector that is not "
            "strictly positive",
            res.rho);
    for (double v : *res.left_vec)
      if (!(v > tol))
        throw ConvergenceError(
            "irreducible matrix produced a left Perron vector that is not "
            "strictly positive",
            res.rho);
  }
  return res;
}

}  // namespace precondaor
