#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace precondaor {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense square matrix of binary64 values, row-major.
///
/// Construction rejects non-finite entries; in-place mutation through
/// operator() is unchecked.
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(int n);
  Matrix(int n, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(int n);

  int order() const { return n_; }

  double operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  double& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }

  const std::vector<double>& entries() const { return e_; }

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator*(double s, Matrix m) { return m *= s; }

  /// Matrix product.
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  bool operator==(const Matrix& rhs) const = default;

  Matrix transpose() const;

  /// Largest absolute entry.
  double max_abs() const;

  /// Max-norm of the difference to another matrix.
  double max_abs_diff(const Matrix& rhs) const;

  std::vector<double> apply(const std::vector<double>& x) const;

  bool all_finite() const;

private:
  int n_ = 0;
  std::vector<double> e_;
};

/// A = D - L - U with D diagonal, L strictly lower, U strictly upper.
/// Reconstruction d - l - u is exact: the parts are copies with sign flips,
/// no arithmetic beyond negation is performed.
struct DluSplit {
  Matrix d;
  Matrix l;
  Matrix u;
};

DluSplit decompose_dlu(const Matrix& a);

/// Entrywise cone relations: GE (>= 0), GT (>= 0 with a positive entry),
/// GG (all entries positive), NONE otherwise. GG implies GT implies GE.
enum class ConeOrder { NONE, GE, GT, GG };

const char* to_string(ConeOrder c);

/// Classifies b1 - b2 against the cones. An entry counts as positive iff
/// > eps and as nonnegative iff > -eps.
ConeOrder cone_compare(const Matrix& b1, const Matrix& b2, double eps = 1e-12);

/// Classifies a single matrix against zero.
ConeOrder cone_sign(const Matrix& b, double eps = 1e-12);

struct MatrixClassReport {
  bool is_z = false;
  bool is_l = false;
  bool is_irreducible = false;
  bool is_nonsingular_m = false;
  bool is_monotone = false;
};

/// Directed-graph irreducibility: edge i -> j iff i != j and
/// |a(i,j)| > eps_pattern. True iff the graph is strongly connected.
/// Order-1 matrices are irreducible.
bool is_irreducible(const Matrix& a, double eps_pattern = 0.0);

/// Classifies a against the Z / L / irreducible / nonsingular-M / monotone
/// classes. Structural sign checks use eps; checks that involve a computed
/// inverse or spectral radius use eps_spectral. The nonsingular-M test is the
/// Jacobi-radius criterion: Z-pattern, positive diagonal and
/// rho(D^-1 (L+U)) < 1 - eps_spectral. A nonpositive diagonal entry makes
/// the test false rather than an error.
MatrixClassReport classify(const Matrix& a, double eps = 1e-12,
                           double eps_spectral = 1e-9);

/// Computes a^-1 by dense LU and classifies it against the cones.
/// Throws SingularMatrixError when a is singular to working tolerance or the
/// reciprocal condition estimate falls below cond_floor.
ConeOrder inverse_nonneg(const Matrix& a, double eps = 1e-9,
                         double cond_floor = 1e-14);

/// Dense inverse via LU; throws SingularMatrixError as inverse_nonneg does.
Matrix inverse(const Matrix& a, double cond_floor = 1e-14);

}  // namespace precondaor
