#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "precondaor/preconditioners.hpp"

namespace precondaor::detail {

inline constexpr double kUnitDiagTol = 1e-12;

inline void require_unit_diagonal(const Matrix& a) {
  for (int i = 0; i < a.order(); ++i)
    if (std::abs(a(i, i) - 1.0) > kUnitDiagTol)
      throw SpecError("preconditioner construction requires a unit diagonal");
}

/// Resolves a possibly length-1 (broadcast) parameter vector.
inline std::vector<double> resolve(const std::vector<double>& v, int len,
                                   const char* what) {
  if (static_cast<int>(v.size()) == len) return v;
  if (v.size() == 1) return std::vector<double>(len, v[0]);
  throw SpecError(std::string(what) + ": expected " + std::to_string(len) +
                  " values, got " + std::to_string(v.size()));
}

enum class Triangle { both, lower, upper };

/// Resolves a possibly 1x1 (broadcast) parameter matrix; the broadcast fills
/// only the triangle the variant reads and keeps a zero diagonal.
inline Matrix resolve(const Matrix& m, int n, const char* what,
                      Triangle fill = Triangle::both) {
  if (m.order() == n) return m;
  if (m.order() == 1) {
    Matrix out(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (fill == Triangle::lower && i < j) continue;
        if (fill == Triangle::upper && i > j) continue;
        out(i, j) = m(0, 0);
      }
    return out;
  }
  throw SpecError(std::string(what) + ": parameter matrix order " +
                  std::to_string(m.order()) + " does not match " +
                  std::to_string(n));
}

}  // namespace precondaor::detail
