#pragma once

#include <optional>
#include <vector>

#include "precondaor/matrix.hpp"

namespace precondaor {

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double best)
      : std::runtime_error(what), best_estimate(best) {}
  double best_estimate;
};

enum class SpectralMethod { power, dense_eig };

struct SpectralResult {
  double rho = 0.0;
  std::optional<std::vector<double>> right_vec;
  std::optional<std::vector<double>> left_vec;
  SpectralMethod method = SpectralMethod::power;
  int iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue modulus by dense nonsymmetric eigendecomposition.
/// Only the moduli are consumed; no eigenvectors are produced.
double dense_radius(const Matrix& t);

/// Spectral radius of t. Entrywise nonnegative matrices go through power
/// iteration (all-ones start, restart from a perturbed vector on stagnation);
/// matrices with negative entries, and power iterations that fail to settle,
/// fall back to the dense eigensolver. method records which path produced rho.
/// Throws ConvergenceError, carrying the best estimate, only if the fallback
/// itself fails.
SpectralResult spectral_radius(const Matrix& t, double tol = 1e-10,
                               int max_iter = 20000);

/// Perron pair of an entrywise nonnegative matrix: rho plus right and left
/// eigenvectors (left via power iteration on the transpose), both normalized
/// to unit max-norm with the first maximal entry positive. For irreducible t
/// the strict positivity of both vectors is checked and a ConvergenceError is
/// thrown if it fails numerically.
SpectralResult perron_pair(const Matrix& t, double tol = 1e-10,
                           int max_iter = 20000);

}  // namespace precondaor
