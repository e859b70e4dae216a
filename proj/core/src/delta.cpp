#include <cmath>

#include "params_internal.hpp"
#include "precondaor/preconditioners.hpp"

namespace precondaor {

namespace {

using detail::resolve;

// All loops below mirror the closed-form entry formulas; indices are 0-based
// while the formulas are stated 1-based, so ranges shift by one.

Matrix delta_q2(const Matrix& a, const Matrix& alpha, double gamma) {
  const int n = a.order();
  Matrix d(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      if (i == j) {
        for (int k = 0; k < n; ++k)
          if (k != i) v += alpha(i, k) * a(i, k) * a(k, i);
      } else if (i < j) {
        v = (gamma - 1.0) * alpha(i, j) * a(i, j);
        double s = 0.0;
        for (int k = i + 1; k < j; ++k) s += alpha(i, k) * a(i, k) * a(k, j);
        v += gamma * s;
      } else {
        v = (gamma - 1.0) * alpha(i, j) * a(i, j);
        double s = 0.0;
        for (int k = 0; k < j; ++k) s += alpha(i, k) * a(i, k) * a(k, j);
        for (int k = i + 1; k < n; ++k) s += alpha(i, k) * a(i, k) * a(k, j);
        v += gamma * s;
      }
      d(i, j) = v;
    }
  }
  return d;
}

Matrix delta_q3_at_one(const Matrix& a, const Matrix& alpha) {
  const int n = a.order();
  Matrix d(n);
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j <= i; ++j) {
      double s = 0.0;
      for (int k = 0; k < j; ++k) s += alpha(i, k) * a(i, k) * a(k, j);
      d(i, j) = s;
    }
  }
  return d;
}

Matrix delta_q5_at_one(const Matrix& a, int row, const std::vector<double>& alpha) {
  const int n = a.order();
  Matrix d(n);
  for (int j = 1; j <= row; ++j) {
    double s = 0.0;
    for (int k = 0; k < j; ++k) s += alpha[k] * a(row, k) * a(k, j);
    d(row, j) = s;
  }
  return d;
}

Matrix delta_q13(const Matrix& a, double alpha, double gamma) {
  const int n = a.order();
  Matrix d(n);
  for (int i = 0; i < n - 1; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      if (i == j) {
        for (int k = i + 1; k < n; ++k) v += a(i, k) * a(k, i);
        v *= alpha;
      } else if (i < j) {
        double s = 0.0;
        for (int k = i + 1; k < j; ++k) s += a(i, k) * a(k, j);
        v = (gamma - 1.0) * alpha * a(i, j) + gamma * alpha * s;
      } else {
        double s = 0.0;
        for (int k = i + 1; k < n; ++k) s += a(i, k) * a(k, j);
        v = gamma * alpha * s;
      }
      d(i, j) = v;
    }
  }
  return d;
}

Matrix delta_q17(const Matrix& a, const std::vector<double>& alpha, double gamma) {
  const int n = a.order();
  Matrix d(n);
  for (int i = 0; i < n - 1; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i)
        d(i, j) = alpha[i] * a(i, i + 1) * a(i + 1, i);
      else if (j == i + 1)
        d(i, j) = (gamma - 1.0) * alpha[i] * a(i, i + 1);
      else
        d(i, j) = gamma * alpha[i] * a(i, i + 1) * a(i + 1, j);
    }
  }
  return d;
}

}  // namespace

DeltaMatrix delta_closed_form(QVariant variant, const Matrix& a,
                              const PreconditionerSpec& spec, double gamma) {
  detail::require_unit_diagonal(a);
  if (spec.variant != variant)
    throw SpecError("delta_closed_form: spec does not carry the requested variant");
  const int n = a.order();

  switch (variant) {
    case QVariant::Q2: {
      const auto& p = std::get<Q2Params>(spec.params);
      return {delta_q2(a, resolve(p.alpha, n, "q2.alpha"), gamma), gamma};
    }
    case QVariant::Q3: {
      if (gamma != 1.0)
        throw SpecError("delta_closed_form: q3 form is available at gamma = 1 only");
      const auto& p = std::get<Q3Params>(spec.params);
      return {delta_q3_at_one(a, resolve(p.alpha, n, "q3.alpha", detail::Triangle::lower)), gamma};
    }
    case QVariant::Q5: {
      if (gamma != 1.0)
        throw SpecError("delta_closed_form: q5 form is available at gamma = 1 only");
      const auto& p = std::get<Q5Params>(spec.params);
      if (p.row < 1 || p.row > n - 1) throw SpecError("q5: row must lie in [2, n]");
      return {delta_q5_at_one(a, p.row, resolve(p.alpha, p.row, "q5.alpha")), gamma};
    }
    case QVariant::Q13: {
      const auto& p = std::get<Q13Params>(spec.params);
      return {delta_q13(a, p.alpha, gamma), gamma};
    }
    case QVariant::Q17: {
      const auto& p = std::get<Q17Params>(spec.params);
      return {delta_q17(a, resolve(p.alpha, n - 1, "q17.alpha"), gamma), gamma};
    }
    default:
      throw SpecError(std::string("delta_closed_form: no closed form for ") +
                      variant_name(variant));
  }
}

}  // namespace precondaor
