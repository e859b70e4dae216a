#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "precondaor/aor.hpp"
#include "precondaor/matrix.hpp"
#include "precondaor/preconditioners.hpp"
#include "precondaor/theorems.hpp"

namespace precondaor {

/// Random unit-diagonal L-matrix: off-diagonal entries drawn from [-mag, 0]
/// at the given density. When irreducible is set, a random Hamiltonian cycle
/// of negative entries is embedded and the result is verified irreducible.
/// mag <= 0 selects the calibrated default 2 / (density * (n - 1)), which
/// spreads instances across the convergent and divergent regimes.
/// Deterministic under seed.
Matrix gen_l_matrix(int n, double density, bool irreducible, std::uint64_t seed,
                    double mag = 0.0);

/// Random unit-diagonal nonsingular M-matrix: an L-pattern whose off-diagonal
/// rows are rescaled so every row sum equals dominance (strict diagonal
/// dominance). dominance must be in (0, 1]. The result is verified through
/// classify().
Matrix gen_m_matrix(int n, double density, double dominance, std::uint64_t seed,
                    bool irreducible = false);

/// Left-scales each row by the reciprocal diagonal entry. Diagonal entries
/// must be positive. Preserves the Z / L / irreducibility classes.
Matrix normalize_diag(const Matrix& a);

enum class GenKind { l, l_irreducible, m, m_irreducible };

GenKind gen_kind_from(const std::string& s);
const char* to_string(GenKind k);

struct ExperimentConfig {
  std::string matrix_file;  ///< Matrix Market input; empty means generated
  GenKind kind = GenKind::l_irreducible;
  int n = 6;
  double density = 0.5;
  double dominance = 0.3;
  double mag = 0.0;  ///< 0 = calibrated default
  std::uint64_t seed = 1;
  int count = 1;  ///< number of generated instances (seed, seed+1, ...)

  PreconditionerSpec spec;
  std::vector<double> gamma_grid{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> omega_grid{0.25, 0.5, 0.75, 1.0};
  std::vector<TheoremKind> theorems{TheoremKind::A};
  std::string out_path;
  bool allow_extended = false;  ///< permit grids outside the theorem range
  int threads = 0;              ///< 0 = hardware, capped by PRECOND_AOR_THREADS

  double branch_tol = 1e-7;
  double strict_margin = 1e-9;
  double spectral_tol = 1e-10;
};

struct SweepRecord {
  std::uint64_t seed = 0;
  int n = 0;
  std::string variant;
  double gamma = 0.0;
  double omega = 0.0;
  double rho_base = 0.0;
  double rho_pre = 0.0;
  std::string branch;
  std::string verdict;      ///< "A:confirmed;B:vacuous" style
  std::string skip_reason;  ///< build failure or failed hypothesis summary
  double wall_ms = 0.0;
  bool refuted = false;
};

struct SweepSummary {
  std::size_t rows = 0;
  std::size_t confirmed = 0;
  std::size_t vacuous = 0;
  std::size_t refuted = 0;
  std::size_t skipped = 0;
};

/// One verified cell: radii of the base and preconditioned iteration
/// matrices, branch, and a verdict per requested theorem. A refuted verdict
/// is re-derived at ten times tighter spectral tolerance before being
/// reported.
SweepRecord evaluate_cell(const Matrix& a, const PreconditionerSpec& spec,
                          double gamma, double omega,
                          const std::vector<TheoremKind>& theorems,
                          const ExperimentConfig& cfg);

/// Runs the full (instance x gamma x omega) sweep, in parallel across
/// instances with a deterministic row order (sorted by seed, gamma, omega).
/// Writes CSV to cfg.out_path when nonempty.
SweepSummary run_sweep(const ExperimentConfig& cfg,
                       std::vector<SweepRecord>* records = nullptr);

/// CSV emission; header:
/// seed,n,variant,gamma,omega,rho_base,rho_pre,branch,verdict,skip_reason,wall_ms
void write_csv(std::ostream& out, const std::vector<SweepRecord>& records);

/// The two embedded counterexample matrices.
Matrix counterexample_4x4();
Matrix counterexample_6x6();

struct ReplayReport {
  bool all_passed = false;
  std::vector<std::string> lines;
};

/// Replays the two counterexamples: both matrices must classify as
/// irreducible L-matrices and the corresponding preconditioned iteration
/// matrices must come out reducible (checked over a small parameter and
/// relaxation scan).
ReplayReport replay_counterexamples();

}  // namespace precondaor
