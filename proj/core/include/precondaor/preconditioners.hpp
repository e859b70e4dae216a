#pragma once

#include <string>
#include <variant>
#include <vector>

#include "precondaor/matrix.hpp"

namespace precondaor {

struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The catalog of left preconditioners P = I + Q. Q1/Q2 are the general
/// forms, Q3-Q11 strictly lower constructions, Q12-Q20 strictly upper ones,
/// Q21-Q34 combinations of one lower and one upper constituent.
enum class QVariant {
  Q1, Q2, Q3, Q4, Q5, Q6, Q7, Q8, Q9, Q10, Q11, Q12, Q13, Q14, Q15, Q16, Q17,
  Q18, Q19, Q20, Q21, Q22, Q23, Q24, Q25, Q26, Q27, Q28, Q29, Q30, Q31, Q32,
  Q33, Q34,
};

const char* variant_name(QVariant v);

// Vector-valued parameters may be given as a single element, which is
// broadcast to the required length when Q is built. Matrix-valued parameters
// may be given as a 1x1 matrix with the same meaning. Row/column anchors are
// 0-based; -1 on a combination constituent means the anchor is fixed by the
// combination itself.

struct Q1Params { Matrix q; };                     ///< explicit Q, zero diagonal, >= 0 elsewhere
struct Q2Params { Matrix alpha; };                 ///< q(i,j) = -alpha(i,j) a(i,j), i != j
struct Q3Params { Matrix alpha; };                 ///< strictly lower part of Q2
struct Q4Params { double alpha; };                 ///< q = alpha * L
struct Q5Params { int row = -1; std::vector<double> alpha; };  ///< one lower row
struct Q6Params { int col = -1; std::vector<double> alpha; };  ///< one lower column
struct Q7Params { int row = -1, col = -1; double alpha = 1.0; };  ///< q(row,col) = -a(row,col)/alpha, row > col
struct Q8Params { std::vector<double> alpha; };    ///< subdiagonal
struct Q9Params { std::vector<double> alpha, beta; };   ///< last row: -alpha_j a(n-1,j) + beta_j
struct Q10Params { std::vector<double> alpha, beta; };  ///< first column, rows 1..n-1
struct Q11Params { double alpha = 1.0, beta = 0.0; };   ///< q(n-1,0) = -a(n-1,0)/alpha - beta
struct Q12Params { Matrix alpha; };                ///< strictly upper part of Q2
struct Q13Params { double alpha; };                ///< q = alpha * U
struct Q14Params { int row = -1; std::vector<double> alpha; };  ///< one upper row
struct Q15Params { int col = -1; std::vector<double> alpha; };  ///< one upper column
struct Q16Params { int row = -1, col = -1; double alpha = 1.0; };  ///< q(row,col) = -a(row,col)/alpha, row < col
struct Q17Params { std::vector<double> alpha; };   ///< superdiagonal
struct Q18Params { std::vector<double> alpha; };   ///< q(i, s_i) = -alpha_i a(i, s_i)
struct Q19Params { std::vector<double> alpha, beta; };  ///< last column, rows 0..n-2
struct Q20Params { double alpha = 1.0, beta = 0.0; };   ///< q(0,n-1) = -a(0,n-1)/alpha - beta

struct Q21Params { Q5Params lower; Q12Params upper; };
struct Q22Params { Q7Params corner; Q12Params upper; };
struct Q23Params { Q3Params lower; Q17Params super; };
struct Q24Params { Q5Params lower; Q17Params super; };
struct Q25Params { Q6Params lower; Q17Params super; };
struct Q26Params { Q7Params corner; Q17Params super; };
struct Q27Params { Q8Params sub; Q20Params corner; };
struct Q28Params { Q8Params sub; Q17Params super; };
struct Q29Params { Q5Params lower; Q15Params upper; };
struct Q30Params { Q6Params lower; Q14Params upper; };
struct Q31Params { Q5Params lower; Q14Params upper; };
struct Q32Params { int row = -1; std::vector<double> left, right; };  ///< full row except diagonal
struct Q33Params { int col = -1; std::vector<double> above, below; };  ///< full column except diagonal
struct Q34Params { Q11Params corner_low; Q20Params corner_high; };

using QParams = std::variant<
    Q1Params, Q2Params, Q3Params, Q4Params, Q5Params, Q6Params, Q7Params,
    Q8Params, Q9Params, Q10Params, Q11Params, Q12Params, Q13Params, Q14Params,
    Q15Params, Q16Params, Q17Params, Q18Params, Q19Params, Q20Params,
    Q21Params, Q22Params, Q23Params, Q24Params, Q25Params, Q26Params,
    Q27Params, Q28Params, Q29Params, Q30Params, Q31Params, Q32Params,
    Q33Params, Q34Params>;

struct PreconditionerSpec {
  QVariant variant = QVariant::Q13;
  QParams params = Q13Params{1.0};
};

/// Builds Q for a unit-diagonal matrix a (checked to 1e-12). Throws SpecError
/// on violated parameter constraints, violated sign preconditions on anchored
/// entries, or an all-zero Q. Combination variants are the sum of their two
/// constituents, whose nonzero patterns must be disjoint.
Matrix build_q(const PreconditionerSpec& spec, const Matrix& a);

struct PreconditionedSystem {
  Matrix q;
  Matrix p;   ///< I + Q
  Matrix pa;  ///< (I + Q) A
  DluSplit split;
};

/// Forms P = I + q, PA and its D/L/U split.
PreconditionedSystem precondition(const Matrix& a, const Matrix& q);

/// Q = q_l + q_u with q_l strictly lower and q_u strictly upper;
/// q_l U = e1 + f1 + g1 and q_u L = e2 + f2 + g2 split the two products into
/// diagonal / strictly lower / strictly upper parts.
struct QDecomposition {
  Matrix q_l, q_u;
  Matrix e1, f1, g1;
  Matrix e2, f2, g2;
};

QDecomposition q_decompose(const Matrix& q, const DluSplit& a_split);

/// The improvement matrix (E1 + E2) + gamma (F1 + F2) + gamma q_u U
/// + (1 - gamma) Q; entrywise nonnegative whenever A is an L-matrix and
/// Q >= 0 with 0 <= gamma <= 1.
struct DeltaMatrix {
  Matrix entries;
  double gamma = 1.0;
};

DeltaMatrix delta_generic(const Matrix& a, const Matrix& q, double gamma);

/// Direct per-variant evaluation of the improvement matrix, implemented for
/// Q2 (any gamma), Q3 (gamma = 1), Q5 (gamma = 1), Q13 and Q17 (any gamma).
/// Exists as an independent oracle for delta_generic; throws SpecError on an
/// unsupported variant / gamma combination.
DeltaMatrix delta_closed_form(QVariant variant, const Matrix& a,
                              const PreconditionerSpec& spec, double gamma);

/// Plain-text key/value serialization, e.g. "variant=q4 alpha=0.5".
/// See README for the full grammar. parse_spec accepts what to_text emits.
std::string to_text(const PreconditionerSpec& spec);
PreconditionerSpec parse_spec(const std::string& text);

}  // namespace precondaor
