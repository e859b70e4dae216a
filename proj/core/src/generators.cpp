#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "precondaor/harness.hpp"

namespace precondaor {

namespace {

double default_mag(int n, double density) { return 2.0 / (density * (n - 1)); }

}  // namespace

Matrix gen_l_matrix(int n, double density, bool irreducible, std::uint64_t seed,
                    double mag) {
  if (n < 2) throw std::invalid_argument("gen_l_matrix: n must be >= 2");
  if (!(density > 0.0 && density <= 1.0))
    throw std::invalid_argument("gen_l_matrix: density must lie in (0, 1]");
  if (mag <= 0.0) mag = default_mag(n, density);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Matrix a(n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 1.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (unit(rng) < density) a(i, j) = -mag * unit(rng);
    }
  }

  if (irreducible) {
    std::vector<int> cycle(n);
    std::iota(cycle.begin(), cycle.end(), 0);
    std::shuffle(cycle.begin(), cycle.end(), rng);
    for (int k = 0; k < n; ++k) {
      const int i = cycle[k];
      const int j = cycle[(k + 1) % n];
      if (a(i, j) == 0.0) a(i, j) = -mag * (0.1 + 0.9 * unit(rng));
    }
    if (!is_irreducible(a, 0.0))
      throw std::logic_error("gen_l_matrix: embedded cycle failed to connect");
  }
  return a;
}

Matrix gen_m_matrix(int n, double density, double dominance, std::uint64_t seed,
                    bool irreducible) {
  if (!(dominance > 0.0 && dominance <= 1.0))
    throw std::invalid_argument("gen_m_matrix: dominance must lie in (0, 1]");
  Matrix a = gen_l_matrix(n, density, irreducible, seed, 1.0);

  // Rescale each off-diagonal row so the row sum equals dominance; rows with
  // no off-diagonal mass stay as they are (their row sum is already 1).
  for (int i = 0; i < n; ++i) {
    double offdiag = 0.0;
    for (int j = 0; j < n; ++j)
      if (i != j) offdiag -= a(i, j);
    if (offdiag == 0.0) continue;
    const double scale = (1.0 - dominance) / offdiag;
    for (int j = 0; j < n; ++j)
      if (i != j) a(i, j) *= scale;
  }

  const MatrixClassReport r = classify(a);
  if (!r.is_nonsingular_m)
    throw std::logic_error("gen_m_matrix: generated matrix fails the M test");
  return a;
}

Matrix normalize_diag(const Matrix& a) {
  const int n = a.order();
  Matrix out(n);
  for (int i = 0; i < n; ++i) {
    const double d = a(i, i);
    if (!(d > 0.0))
      throw std::invalid_argument("normalize_diag: diagonal entries must be positive");
    for (int j = 0; j < n; ++j) out(i, j) = a(i, j) / d;
    out(i, i) = 1.0;
  }
  return out;
}

GenKind gen_kind_from(const std::string& s) {
  if (s == "l") return GenKind::l;
  if (s == "il" || s == "l_irreducible") return GenKind::l_irreducible;
  if (s == "m") return GenKind::m;
  if (s == "im" || s == "m_irreducible") return GenKind::m_irreducible;
  throw std::invalid_argument("unknown generator kind: " + s +
                              " (expected l, il, m or im)");
}

const char* to_string(GenKind k) {
  switch (k) {
    case GenKind::l: return "l";
    case GenKind::l_irreducible: return "il";
    case GenKind::m: return "m";
    case GenKind::m_irreducible: return "im";
  }
  return "?";
}

}  // namespace precondaor
