#include "precondaor/matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace precondaor {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
  const int n = m.order();
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m(i, j);
  return out;
}

Matrix from_eigen(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Matrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m(i, j);
  return out;
}

void require_same_order(const Matrix& a, const Matrix& b) {
  if (a.order() != b.order())
    throw DimensionError("matrix orders differ: " + std::to_string(a.order()) +
                         " vs " + std::to_string(b.order()));
}

}  // namespace

Matrix::Matrix(int n) : n_(n), e_(static_cast<std::size_t>(n) * n, 0.0) {
  if (n < 1) throw DimensionError("matrix order must be >= 1");
}

Matrix::Matrix(int n, std::vector<double> entries) : n_(n), e_(std::move(entries)) {
  if (n < 1) throw DimensionError("matrix order must be >= 1");
  if (e_.size() != static_cast<std::size_t>(n) * n)
    throw DimensionError("entry count does not match order");
  if (!all_finite()) throw std::invalid_argument("matrix entries must be finite");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  n_ = static_cast<int>(rows.size());
  if (n_ < 1) throw DimensionError("matrix order must be >= 1");
  e_.reserve(static_cast<std::size_t>(n_) * n_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_)
      throw DimensionError("matrix rows must have length equal to the order");
    e_.insert(e_.end(), row.begin(), row.end());
  }
  if (!all_finite()) throw std::invalid_argument("matrix entries must be finite");
}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_order(*this, rhs);
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += rhs.e_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_order(*this, rhs);
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= rhs.e_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : e_) v *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_order(a, b);
  const int n = a.order();
  Matrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : e_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::max_abs_diff(const Matrix& rhs) const {
  require_same_order(*this, rhs);
  double m = 0.0;
  for (std::size_t k = 0; k < e_.size(); ++k)
    m = std::max(m, std::abs(e_[k] - rhs.e_[k]));
  return m;
}

std::vector<double> Matrix::apply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw DimensionError("vector length does not match matrix order");
  std::vector<double> y(x.size(), 0.0);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

bool Matrix::all_finite() const {
  return std::all_of(e_.begin(), e_.end(), [](double v) { return std::isfinite(v); });
}

DluSplit decompose_dlu(const Matrix& a) {
  const int n = a.order();
  DluSplit s{Matrix(n), Matrix(n), Matrix(n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j)
        s.d(i, j) = a(i, j);
      else if (i > j)
        s.l(i, j) = -a(i, j);
      else
        s.u(i, j) = -a(i, j);
    }
  }
  return s;
}

const char* to_string(ConeOrder c) {
  switch (c) {
    case ConeOrder::NONE: return "none";
    case ConeOrder::GE: return "ge";
    case ConeOrder::GT: return "gt";
    case ConeOrder::GG: return "gg";
  }
  return "?";
}

ConeOrder cone_sign(const Matrix& b, double eps) {
  bool any_positive = false;
  bool all_positive = true;
  for (double v : b.entries()) {
    if (v < -eps) return ConeOrder::NONE;
    if (v > eps)
      any_positive = true;
    else
      all_positive = false;
  }
  if (all_positive) return ConeOrder::GG;
  return any_positive ? ConeOrder::GT : ConeOrder::GE;
}

ConeOrder cone_compare(const Matrix& b1, const Matrix& b2, double eps) {
  require_same_order(b1, b2);
  return cone_sign(b1 - b2, eps);
}

namespace {

// Tarjan over the pattern graph, iterative to keep stack use flat.
int count_sccs(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), lowlink(n, 0), on_stack(n, 0);
  std::vector<int> stack;
  int next_index = 0;
  int sccs = 0;

  struct Frame {
    int v;
    std::size_t edge;
  };
  std::vector<Frame> call;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < adj[f.v].size()) {
        const int w = adj[f.v][f.edge++];
        if (index[w] == -1) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        const int v = f.v;
        call.pop_back();
        if (!call.empty())
          lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[v]);
        if (lowlink[v] == index[v]) {
          ++sccs;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
          } while (w != v);
        }
      }
    }
  }
  return sccs;
}

}  // namespace

bool is_irreducible(const Matrix& a, double eps_pattern) {
  const int n = a.order();
  if (n == 1) return true;
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && std::abs(a(i, j)) > eps_pattern) adj[i].push_back(j);
  return count_sccs(adj) == 1;
}

namespace {

double jacobi_radius(const Matrix& a) {
  const int n = a.order();
  Eigen::MatrixXd j(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) j(i, k) = (i == k) ? 0.0 : -a(i, k) / a(i, i);
  return j.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

MatrixClassReport classify(const Matrix& a, double eps, double eps_spectral) {
  const int n = a.order();
  MatrixClassReport r;

  r.is_z = true;
  for (int i = 0; i < n && r.is_z; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && a(i, j) > eps) {
        r.is_z = false;
        break;
      }

  r.is_l = r.is_z;
  for (int i = 0; i < n && r.is_l; ++i)
    if (a(i, i) <= eps) r.is_l = false;

  r.is_irreducible = is_irreducible(a, 0.0);

  r.is_nonsingular_m = false;
  if (r.is_l) {
    bool diag_positive = true;
    for (int i = 0; i < n; ++i)
      if (a(i, i) <= 0.0) diag_positive = false;
    if (diag_positive)
      r.is_nonsingular_m = jacobi_radius(a) < 1.0 - eps_spectral;
  }

  r.is_monotone = false;
  try {
    r.is_monotone = inverse_nonneg(a, eps_spectral) != ConeOrder::NONE;
  } catch (const SingularMatrixError&) {
    r.is_monotone = false;
  }

  return r;
}

Matrix inverse(const Matrix& a, double cond_floor) {
  const Eigen::MatrixXd m = to_eigen(a);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const double rcond = lu.rcond();
  if (!std::isfinite(rcond) || rcond < cond_floor)
    throw SingularMatrixError("matrix is singular to working precision (rcond " +
                              std::to_string(rcond) + ")");
  return from_eigen(lu.inverse());
}

ConeOrder inverse_nonneg(const Matrix& a, double eps, double cond_floor) {
  return cone_sign(inverse(a, cond_floor), eps);
}

}  // namespace precondaor
