#pragma once

#include <string>
#include <vector>

#include "precondaor/matrix.hpp"
#include "precondaor/preconditioners.hpp"

namespace precondaor {

/// The four comparison families: A and C are the trichotomy results (non
/// strict and strict), B and D the convergent-ordering results (non strict
/// and strict).
enum class TheoremKind { A, B, C, D };

const char* to_string(TheoremKind k);
TheoremKind theorem_kind_from(const std::string& s);

struct HypothesisReport {
  std::string theorem;
  bool passed = false;
  std::vector<std::string> failed_conditions;
};

struct HypothesisOptions {
  double eps = 1e-12;          ///< structural sign tolerance
  double eps_spectral = 1e-9;  ///< tolerance for radius/inverse backed checks
  double pattern_eps = 0.0;    ///< irreducibility pattern threshold
};

/// Evaluates the named hypothesis set on (A, Q, gamma, omega) and reports
/// every violated condition. Known tags:
///   "3.1".."3.8", "Cor3.5".."Cor3.8" and the family aliases
///   "A" (= 3.1), "B" (= 3.2), "C" (= 3.3), "D" (= 3.4).
/// A tag may carry a branch selector, e.g. "3.3(i)", restricting a theorem
/// with alternative condition sets to the named branch. Standing assumptions
/// on A (L-matrix, nonsingular M, irreducibility) are part of each family's
/// conditions and are checked, never assumed. Tags 3.5-3.8 apply to
/// preconditioners whose entries have the form -alpha(i,j) a(i,j); the
/// effective alpha is recovered from Q, and a Q entry over a zero entry of A
/// fails the applicability condition.
HypothesisReport check_hypotheses(const std::string& tag, const Matrix& a,
                                  const PreconditionerSpec& spec, double gamma,
                                  double omega,
                                  const HypothesisOptions& opt = {});

/// As above with a prebuilt Q (spares rebuilding inside sweeps).
HypothesisReport check_hypotheses_q(const std::string& tag, const Matrix& a,
                                    const Matrix& q, double gamma, double omega,
                                    const HypothesisOptions& opt = {});

enum class Branch { below_one, at_one, above_one, violation };

const char* to_string(Branch b);

struct ComparisonBranch {
  Branch branch = Branch::violation;
  double rho_base = 0.0;
  double rho_pre = 0.0;
  bool strict = false;
};

/// Sorts a pair of spectral radii into the trichotomy:
///   at_one     |rho_base - 1| <= tol and |rho_pre - 1| <= tol
///   below_one  rho_base < 1 - tol and rho_pre <= rho_base + tol
///              (strict: rho_pre < rho_base - strict_margin)
///   above_one  the mirror image
///   violation  anything else
ComparisonBranch classify_branch(double rho_base, double rho_pre,
                                 double tol = 1e-7, bool strict_required = false,
                                 double strict_margin = 1e-9);

enum class Verdict { confirmed, vacuous, refuted };

const char* to_string(Verdict v);

/// vacuous when the hypotheses fail; confirmed when they pass and the branch
/// matches the family (A: any non-violation branch classified non-strictly;
/// B: below_one non-strict; C: any non-violation branch classified strictly;
/// D: below_one strict); refuted otherwise.
Verdict verify_theorem(TheoremKind kind, const HypothesisReport& hyp,
                       const ComparisonBranch& branch);

}  // namespace precondaor
