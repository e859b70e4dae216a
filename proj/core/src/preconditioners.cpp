#include "precondaor/preconditioners.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "params_internal.hpp"

namespace precondaor {

namespace {

using detail::kUnitDiagTol;
using detail::require_unit_diagonal;
using detail::resolve;

void require_nonzero(const Matrix& q, const char* variant) {
  for (double v : q.entries())
    if (v != 0.0) return;
  throw SpecError(std::string(variant) + ": the built Q is identically zero");
}

void require_nonneg(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (x < 0.0) throw SpecError(std::string(what) + ": parameters must be >= 0");
}

struct Builder {
  const Matrix& a;
  int n;

  Matrix build(const PreconditionerSpec& spec) const {
    Matrix q = std::visit([&](const auto& p) { return (*this)(p); }, spec.params);
    require_nonzero(q, variant_name(spec.variant));
    return q;
  }

  Matrix operator()(const Q1Params& p) const {
    Matrix q = resolve(p.q, n, "q1.q");
    for (int i = 0; i < n; ++i) {
      if (std::abs(q(i, i)) > kUnitDiagTol)
        throw SpecError("q1: Q must have a zero diagonal");
      q(i, i) = 0.0;
      for (int j = 0; j < n; ++j)
        if (i != j && q(i, j) < 0.0)
          throw SpecError("q1: off-diagonal entries must be >= 0");
    }
    return q;
  }

  Matrix operator()(const Q2Params& p) const {
    const Matrix alpha = resolve(p.alpha, n, "q2.alpha");
    Matrix q(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (alpha(i, j) < 0.0) throw SpecError("q2: alpha must be >= 0");
        q(i, j) = -alpha(i, j) * a(i, j);
      }
    return q;
  }

  Matrix operator()(const Q3Params& p) const {
    const Matrix alpha = resolve(p.alpha, n, "q3.alpha", detail::Triangle::lower);
    Matrix q(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i > j) {
          if (alpha(i, j) < 0.0) throw SpecError("q3: alpha must be >= 0");
          q(i, j) = -alpha(i, j) * a(i, j);
        } else if (i < j && alpha(i, j) != 0.0) {
          throw SpecError("q3: alpha must vanish on and above the diagonal");
        }
      }
    return q;
  }

  Matrix operator()(const Q4Params& p) const {
    if (p.alpha <= 0.0) throw SpecError("q4: alpha must be > 0");
    Matrix q(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) q(i, j) = -p.alpha * a(i, j);
    return q;
  }

  Matrix operator()(const Q5Params& p) const {
    if (p.row < 1 || p.row > n - 1) throw SpecError("q5: row must lie in [2, n]");
    const auto alpha = resolve(p.alpha, p.row, "q5.alpha");
    require_nonneg(alpha, "q5.alpha");
    Matrix q(n);
    for (int j = 0; j < p.row; ++j) q(p.row, j) = -alpha[j] * a(p.row, j);
    return q;
  }

  Matrix operator()(const Q6Params& p) const {
    if (p.col < 0 || p.col > n - 2) throw SpecError("q6: column must lie in [1, n-1]");
    const auto alpha = resolve(p.alpha, n - 1 - p.col, "q6.alpha");
    require_nonneg(alpha, "q6.alpha");
    Matrix q(n);
    for (int i = p.col + 1; i < n; ++i)
      q(i, p.col) = -alpha[i - p.col - 1] * a(i, p.col);
    return q;
  }

  Matrix operator()(const Q7Params& p) const {
    if (p.col < 0 || p.row >= n || p.row <= p.col)
      throw SpecError("q7: requires a strictly lower anchor (row > col)");
    if (p.alpha <= 0.0) throw SpecError("q7: alpha must be > 0");
    if (!(a(p.row, p.col) < 0.0))
      throw SpecError("q7: the anchored entry of A must be negative");
    Matrix q(n);
    q(p.row, p.col) = -a(p.row, p.col) / p.alpha;
    return q;
  }

  Matrix operator()(const Q8Params& p) const {
    const auto alpha = resolve(p.alpha, n - 1, "q8.alpha");
    require_nonneg(alpha, "q8.alpha");
    Matrix q(n);
    for (int k = 0; k < n - 1; ++k) q(k + 1, k) = -alpha[k] * a(k + 1, k);
    return q;
  }

  Matrix operator()(const Q9Params& p) const {
    const auto alpha = resolve(p.alpha, n - 1, "q9.alpha");
    const auto beta = resolve(p.beta, n - 1, "q9.beta");
    require_nonneg(alpha, "q9.alpha");
    Matrix q(n);
    for (int j = 0; j < n - 1; ++j) {
      const double v = -alpha[j] * a(n - 1, j) + beta[j];
      if (v < 0.0) throw SpecError("q9: -alpha*a + beta must be >= 0 per entry");
      q(n - 1, j) = v;
    }
    return q;
  }

  Matrix operator()(const Q10Params& p) const {
    const auto alpha = resolve(p.alpha, n - 1, "q10.alpha");
    const auto beta = resolve(p.beta, n - 1, "q10.beta");
    require_nonneg(alpha, "q10.alpha");
    Matrix q(n);
    for (int i = 1; i < n; ++i) {
      const double v = -alpha[i - 1] * a(i, 0) + beta[i - 1];
      if (v < 0.0) throw SpecError("q10: -alpha*a + beta must be >= 0 per entry");
      q(i, 0) = v;
    }
    return q;
  }

  Matrix operator()(const Q11Params& p) const {
    if (p.alpha <= 0.0) throw SpecError("q11: alpha must be > 0");
    const double v = -a(n - 1, 0) / p.alpha - p.beta;
    if (!(v > 0.0))
      throw SpecError("q11: requires a(n,1)/alpha + beta < 0");
    Matrix q(n);
    q(n - 1, 0) = v;
    return q;
  }

  Matrix operator()(const Q12Params& p) const {
    const Matrix alpha = resolve(p.alpha, n, "q12.alpha", detail::Triangle::upper);
    Matrix q(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i < j) {
          if (alpha(i, j) < 0.0) throw SpecError("q12: alpha must be >= 0");
          q(i, j) = -alpha(i, j) * a(i, j);
        } else if (i > j && alpha(i, j) != 0.0) {
          throw SpecError("q12: alpha must vanish on and below the diagonal");
        }
      }
    return q;
  }

  Matrix operator()(const Q13Params& p) const {
    if (p.alpha <= 0.0) throw SpecError("q13: alpha must be > 0");
    Matrix q(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) q(i, j) = -p.alpha * a(i, j);
    return q;
  }

  Matrix operator()(const Q14Params& p) const {
    if (p.row < 0 || p.row > n - 2) throw SpecError("q14: row must lie in [1, n-1]");
    const auto alpha = resolve(p.alpha, n - 1 - p.row, "q14.alpha");
    require_nonneg(alpha, "q14.alpha");
    Matrix q(n);
    for (int j = p.row + 1; j < n; ++j)
      q(p.row, j) = -alpha[j - p.row - 1] * a(p.row, j);
    return q;
  }

  Matrix operator()(const Q15Params& p) const {
    if (p.col < 1 || p.col > n - 1) throw SpecError("q15: column must lie in [2, n]");
    const auto alpha = resolve(p.alpha, p.col, "q15.alpha");
    require_nonneg(alpha, "q15.alpha");
    Matrix q(n);
    for (int i = 0; i < p.col; ++i) q(i, p.col) = -alpha[i] * a(i, p.col);
    return q;
  }

  Matrix operator()(const Q16Params& p) const {
    if (p.row < 0 || p.col >= n || p.row >= p.col)
      throw SpecError("q16: requires a strictly upper anchor (row < col)");
    if (p.alpha <= 0.0) throw SpecError("q16: alpha must be > 0");
    if (!(a(p.row, p.col) < 0.0))
      throw SpecError("q16: the anchored entry of A must be negative");
    Matrix q(n);
    q(p.row, p.col) = -a(p.row, p.col) / p.alpha;
    return q;
  }

  Matrix operator()(const Q17Params& p) const {
    const auto alpha = resolve(p.alpha, n - 1, "q17.alpha");
    require_nonneg(alpha, "q17.alpha");
    Matrix q(n);
    for (int k = 0; k < n - 1; ++k) q(k, k + 1) = -alpha[k] * a(k, k + 1);
    return q;
  }

  Matrix operator()(const Q18Params& p) const {
    const auto alpha = resolve(p.alpha, n - 1, "q18.alpha");
    require_nonneg(alpha, "q18.alpha");
    Matrix q(n);
    for (int i = 0; i < n - 1; ++i) {
      // Smallest column index attaining the largest |a(i,k)|, k > i.
      int s = i + 1;
      for (int k = i + 2; k < n; ++k)
        if (std::abs(a(i, k)) > std::abs(a(i, s))) s = k;
      q(i, s) = -alpha[i] * a(i, s);
    }
    return q;
  }

  Matrix operator()(const Q19Params& p) const {
    const auto alpha = resolve(p.alpha, n - 1, "q19.alpha");
    const auto beta = resolve(p.beta, n - 1, "q19.beta");
    require_nonneg(alpha, "q19.alpha");
    Matrix q(n);
    for (int i = 0; i < n - 1; ++i) {
      const double v = -alpha[i] * a(i, n - 1) + beta[i];
      if (v < 0.0) throw SpecError("q19: -alpha*a + beta must be >= 0 per entry");
      q(i, n - 1) = v;
    }
    return q;
  }

  Matrix operator()(const Q20Params& p) const {
    if (p.alpha <= 0.0) throw SpecError("q20: alpha must be > 0");
    const double v = -a(0, n - 1) / p.alpha - p.beta;
    if (!(v > 0.0))
      throw SpecError("q20: requires a(1,n)/alpha + beta < 0");
    Matrix q(n);
    q(0, n - 1) = v;
    return q;
  }

  /// Sums two constituent matrices after checking pattern disjointness and
  /// that each constituent is nonzero on its own.
  Matrix combine(const Matrix& qa, const Matrix& qb, const char* variant) const {
    require_nonzero(qa, variant);
    require_nonzero(qb, variant);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (qa(i, j) != 0.0 && qb(i, j) != 0.0)
          throw SpecError(std::string(variant) +
                          ": constituent patterns overlap at (" +
                          std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    return qa + qb;
  }

  template <typename P>
  P anchored_row(P p, int row) const {
    if (p.row < 0) p.row = row;
    return p;
  }
  template <typename P>
  P anchored_col(P p, int col) const {
    if (p.col < 0) p.col = col;
    return p;
  }

  Matrix operator()(const Q21Params& p) const {
    return combine((*this)(anchored_row(p.lower, n - 1)), (*this)(p.upper), "q21");
  }
  Matrix operator()(const Q22Params& p) const {
    Q7Params c = p.corner;
    if (c.row < 0) c.row = n - 1;
    if (c.col < 0) c.col = 0;
    return combine((*this)(c), (*this)(p.upper), "q22");
  }
  Matrix operator()(const Q23Params& p) const {
    return combine((*this)(p.lower), (*this)(p.super), "q23");
  }
  Matrix operator()(const Q24Params& p) const {
    return combine((*this)(anchored_row(p.lower, n - 1)), (*this)(p.super), "q24");
  }
  Matrix operator()(const Q25Params& p) const {
    return combine((*this)(anchored_col(p.lower, 0)), (*this)(p.super), "q25");
  }
  Matrix operator()(const Q26Params& p) const {
    Q7Params c = p.corner;
    if (c.row < 0) c.row = n - 1;
    if (c.col < 0) c.col = 0;
    return combine((*this)(c), (*this)(p.super), "q26");
  }
  Matrix operator()(const Q27Params& p) const {
    return combine((*this)(p.sub), (*this)(p.corner), "q27");
  }
  Matrix operator()(const Q28Params& p) const {
    return combine((*this)(p.sub), (*this)(p.super), "q28");
  }
  Matrix operator()(const Q29Params& p) const {
    return combine((*this)(anchored_row(p.lower, n - 1)),
                   (*this)(anchored_col(p.upper, n - 1)), "q29");
  }
  Matrix operator()(const Q30Params& p) const {
    return combine((*this)(anchored_col(p.lower, 0)),
                   (*this)(anchored_row(p.upper, 0)), "q30");
  }
  Matrix operator()(const Q31Params& p) const {
    return combine((*this)(anchored_row(p.lower, n - 1)),
                   (*this)(anchored_row(p.upper, 0)), "q31");
  }
  Matrix operator()(const Q32Params& p) const {
    if (p.row < 1 || p.row > n - 2)
      throw SpecError("q32: row must lie in [2, n-1]");
    const Q5Params lower{p.row, p.left};
    const Q14Params upper{p.row, p.right};
    return combine((*this)(lower), (*this)(upper), "q32");
  }
  Matrix operator()(const Q33Params& p) const {
    if (p.col < 1 || p.col > n - 2)
      throw SpecError("q33: column must lie in [2, n-1]");
    const Q15Params upper{p.col, p.above};
    const Q6Params lower{p.col, p.below};
    return combine((*this)(upper), (*this)(lower), "q33");
  }
  Matrix operator()(const Q34Params& p) const {
    return combine((*this)(p.corner_low), (*this)(p.corner_high), "q34");
  }
};

}  // namespace

const char* variant_name(QVariant v) {
  static const char* names[] = {
      "q1",  "q2",  "q3",  "q4",  "q5",  "q6",  "q7",  "q8",  "q9",
      "q10", "q11", "q12", "q13", "q14", "q15", "q16", "q17", "q18",
      "q19", "q20", "q21", "q22", "q23", "q24", "q25", "q26", "q27",
      "q28", "q29", "q30", "q31", "q32", "q33", "q34"};
  return names[static_cast<int>(v)];
}

Matrix build_q(const PreconditionerSpec& spec, const Matrix& a) {
  require_unit_diagonal(a);
  if (a.order() < 2) throw SpecError("preconditioners require order >= 2");
  return Builder{a, a.order()}.build(spec);
}

PreconditionedSystem precondition(const Matrix& a, const Matrix& q) {
  if (a.order() != q.order())
    throw DimensionError("precondition: orders of A and Q differ");
  const int n = a.order();
  Matrix p = Matrix::identity(n) + q;
  Matrix pa = p * a;
  PreconditionedSystem sys{q, std::move(p), pa, decompose_dlu(pa)};

#ifndef NDEBUG
  // Entry formulas of the preconditioned matrix, valid when A has a unit
  // diagonal and Q a zero diagonal.
  bool unit_diag = true;
  for (int i = 0; i < n; ++i)
    if (std::abs(a(i, i) - 1.0) > kUnitDiagTol || q(i, i) != 0.0) unit_diag = false;
  if (unit_diag) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double expected;
        if (i == j) {
          expected = 1.0;
          for (int k = 0; k < n; ++k)
            if (k != i) expected += q(i, k) * a(k, i);
        } else {
          expected = a(i, j) + q(i, j);
          for (int k = 0; k < n; ++k)
            if (k != i && k != j) expected += q(i, k) * a(k, j);
        }
        if (std::abs(expected - sys.pa(i, j)) >
            1e-12 * std::max(1.0, sys.pa.max_abs()))
          throw std::logic_error("precondition: entry formula check failed");
      }
    }
  }
#endif
  return sys;
}

QDecomposition q_decompose(const Matrix& q, const DluSplit& a_split) {
  if (q.order() != a_split.d.order())
    throw DimensionError("q_decompose: orders differ");
  const int n = q.order();
  QDecomposition d{Matrix(n), Matrix(n), Matrix(n), Matrix(n), Matrix(n),
                   Matrix(n), Matrix(n), Matrix(n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i > j)
        d.q_l(i, j) = q(i, j);
      else if (i < j)
        d.q_u(i, j) = q(i, j);
    }
  const Matrix lu1 = d.q_l * a_split.u;
  const Matrix lu2 = d.q_u * a_split.l;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        d.e1(i, j) = lu1(i, j);
        d.e2(i, j) = lu2(i, j);
      } else if (i > j) {
        d.f1(i, j) = lu1(i, j);
        d.f2(i, j) = lu2(i, j);
      } else {
        d.g1(i, j) = lu1(i, j);
        d.g2(i, j) = lu2(i, j);
      }
    }
  return d;
}

DeltaMatrix delta_generic(const Matrix& a, const Matrix& q, double gamma) {
  require_unit_diagonal(a);
  const DluSplit split = decompose_dlu(a);
  const QDecomposition d = q_decompose(q, split);
  Matrix delta = d.e1 + d.e2;
  delta += gamma * (d.f1 + d.f2);
  delta += gamma * (d.q_u * split.u);
  delta += (1.0 - gamma) * q;
  return DeltaMatrix{std::move(delta), gamma};
}

}  // namespace precondaor
