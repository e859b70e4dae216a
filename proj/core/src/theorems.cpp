#include "precondaor/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

namespace precondaor {

const char* to_string(TheoremKind k) {
  switch (k) {
    case TheoremKind::A: return "A";
    case TheoremKind::B: return "B";
    case TheoremKind::C: return "C";
    case TheoremKind::D: return "D";
  }
  return "?";
}

TheoremKind theorem_kind_from(const std::string& s) {
  if (s == "A" || s == "a") return TheoremKind::A;
  if (s == "B" || s == "b") return TheoremKind::B;
  if (s == "C" || s == "c") return TheoremKind::C;
  if (s == "D" || s == "d") return TheoremKind::D;
  throw std::invalid_argument("unknown theorem kind: " + s);
}

const char* to_string(Branch b) {
  switch (b) {
    case Branch::below_one: return "below_one";
    case Branch::at_one: return "at_one";
    case Branch::above_one: return "above_one";
    case Branch::violation: return "violation";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::confirmed: return "confirmed";
    case Verdict::vacuous: return "vacuous";
    case Verdict::refuted: return "refuted";
  }
  return "?";
}

namespace {

// Everything below evaluates hypothesis conditions on materialized matrices:
// A, Q, PA and the improvement matrix at gamma = 1. The two evaluation routes
// (PA by matrix product vs. PA by the per-entry closed sums in the recovered
// alpha weights) produce the same matrices up to rounding, so a single
// condition library serves both.

struct HypCtx {
  const Matrix& a;
  const Matrix& q;
  Matrix pa;
  Matrix delta1;
  int n;
  double eps;
  double pattern_eps;
  double gamma;
  bool pa_irr = false;

  HypCtx(const Matrix& a_, const Matrix& q_, Matrix pa_, Matrix delta1_,
         const HypothesisOptions& opt, double gamma_)
      : a(a_), q(q_), pa(std::move(pa_)), delta1(std::move(delta1_)),
        n(a_.order()), eps(opt.eps), pattern_eps(opt.pattern_eps), gamma(gamma_) {
    pa_irr = is_irreducible(pa, pattern_eps);
  }

  bool pa_is_z() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && pa(i, j) > eps) return false;
    return true;
  }

  bool pa_is_l() const {
    if (!pa_is_z()) return false;
    for (int i = 0; i < n; ++i)
      if (!(pa(i, i) > eps)) return false;
    return true;
  }

  /// x "at most zero", strictly when PA is reducible.
  bool lesssim_zero(double x) const {
    return pa_irr ? x <= eps : x < -eps;
  }

  // Positivity conditions that make the gamma = 1 comparison strict.
  bool ii1() const {
    for (double v : delta1.entries())
      if (v > eps) return true;
    return false;
  }
  bool ii2() const { return q(n - 1, 0) > eps; }
  bool ii3() const {
    for (int k = 0; k + 1 < n; ++k)
      if (q(k, k + 1) > eps) return true;
    return false;
  }
  bool ii4() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (q(i, j) * a(j, i) < -eps) return true;
    return false;
  }
  bool ii5() const {
    for (int i = 0; i + 1 < n; ++i)
      for (int j = 0; j <= i; ++j)
        if (q(i, n - 1) * a(n - 1, j) < -eps) return true;
    return false;
  }
  bool ii6() const {
    for (int i = 0; i + 1 < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (q(i, j) * a(j, 0) < -eps) return true;
    return false;
  }
  bool ii7() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j + 1 < n; ++j)
        if (q(i, j) * a(j, j + 1) < -eps) return true;
    return false;
  }
  bool ii8() const {
    for (int i = 1; i < n; ++i)
      for (int j = 1; j <= i; ++j)
        if (q(i, 0) * a(0, j) < -eps) return true;
    return false;
  }
  bool ii9() const {
    if (!(a(n - 1, 0) < -eps)) return false;
    for (int k = 0; k + 1 < n; ++k)
      if (!(a(k, k + 1) < -eps)) return false;
    return true;
  }
  bool any_ii() const {
    return ii1() || ii2() || ii3() || ii4() || ii5() || ii6() || ii7() ||
           ii8() || ii9();
  }

  // Per-row positivity conditions for interior rows at gamma = 1.
  bool iv1(int i) const {
    for (int j = 0; j < n; ++j)
      if (delta1(i, j) > eps) return true;
    return false;
  }
  bool iv2(int i) const { return i + 1 < n && q(i, i + 1) > eps; }
  bool iv3(int i) const {
    for (int j = 0; j < n; ++j)
      if (q(i, j) * a(j, i) < -eps) return true;
    return false;
  }
  bool iv4(int i) const {
    for (int j = 0; j <= i; ++j)
      if (q(i, n - 1) * a(n - 1, j) < -eps) return true;
    return false;
  }
  bool iv5(int i) const {
    for (int j = i + 1; j < n; ++j)
      if (q(i, j) * a(j, 0) < -eps) return true;
    return false;
  }
  bool iv6(int i) const {
    for (int j = 0; j + 1 < n; ++j)
      if (q(i, j) * a(j, j + 1) < -eps) return true;
    return false;
  }
  bool iv7(int i) const {
    for (int j = 1; j <= i; ++j)
      if (q(i, 0) * a(0, j) < -eps) return true;
    return false;
  }
  bool any_iv(int i) const {
    return iv1(i) || iv2(i) || iv3(i) || iv4(i) || iv5(i) || iv6(i) || iv7(i);
  }
  bool any_iv_first_six(int i) const {
    return iv1(i) || iv2(i) || iv3(i) || iv4(i) || iv5(i) || iv6(i);
  }

  // Last-row alternatives at gamma = 1.
  bool iva() const {
    for (int j = 1; j < n; ++j)
      for (int k = 0; k < j; ++k)
        if (q(n - 1, k) * a(k, j) < -eps) return true;
    return false;
  }
  bool ivb() const { return q(n - 1, 0) > eps; }
  bool ivc() const {
    for (int j = 1; j + 1 < n; ++j)
      if (pa(n - 1, j) < -eps) return true;
    return false;
  }
  bool ivd() const { return any_iv_first_six(0) && pa(n - 1, 0) < -eps; }
  bool ive() const { return any_iv_first_six(0) && a(n - 1, 0) < -eps; }

  /// Replacement alternative used by the strict corollaries: instead of the
  /// last-row entry estimate, some q(n-1, j) strictly dominates -a(n-1, j).
  bool ivf_replacement() const {
    if (!any_iv_first_six(0)) return false;
    for (int j = 0; j + 1 < n; ++j)
      if (q(n - 1, j) < -a(n - 1, j) - eps) return true;
    return false;
  }

  bool branch_i() const { return gamma < 1.0 && pa_irr; }
  bool branch_ii() const { return gamma == 1.0 && pa_irr && any_ii(); }
  bool branch_iii() const {
    if (!(gamma < 1.0)) return false;
    for (int i = 0; i + 1 < n; ++i) {
      bool row_ok = false;
      for (int j = 0; j < n; ++j)
        if (q(i, j) > eps) {
          row_ok = true;
          break;
        }
      if (!row_ok) return false;
    }
    return true;
  }
  bool branch_iv(bool with_replacement) const {
    if (gamma != 1.0) return false;
    for (int i = 1; i + 1 < n; ++i)
      if (!any_iv(i)) return false;
    bool last = iva() || ivb() || ivc() || ivd() || ive();
    if (with_replacement) last = last || ivf_replacement();
    return last;
  }

  // Strict-comparison alternative for nonsingular M input: the lower
  // triangle of PA is dominated by A with at least one proper gap.
  bool thm34_ii() const {
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j)
        if (!(a(i, j) >= pa(i, j) - eps)) return false;
    for (int i = 0; i < n; ++i)
      if (pa(i, i) < 1.0 - eps) return true;
    if (gamma > 0.0) {
      for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j)
          if (a(i, j) > pa(i, j) + eps) return true;
    }
    return false;
  }

  // Base conditions of the dominated-entry corollaries.
  bool q_dominated() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && !(q(i, j) <= -a(i, j) + eps)) return false;
    return true;
  }
  bool diag_stays_positive() const {
    for (int i = 0; i < n; ++i)
      if (!(pa(i, i) > eps)) return false;
    return true;
  }
  bool cor37_i() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && a(i, j) < -eps && !lesssim_zero(q(i, j) + a(i, j)))
          return false;
    return gamma < 1.0 || (gamma == 1.0 && any_ii());
  }
  bool cor37_ii() const { return branch_iii() || branch_iv(true); }
};

struct CondSet {
  std::vector<std::string> failed;
  void require(const std::string& name, bool ok) {
    if (!ok) failed.push_back(name);
  }
};

enum class Family { A, B, C, D };

struct ParsedTag {
  std::string base;
  std::string selector;  // empty = full disjunction
};

ParsedTag parse_tag(const std::string& tag) {
  const auto open = tag.find('(');
  if (open == std::string::npos) return {tag, ""};
  if (tag.back() != ')') throw std::invalid_argument("malformed theorem tag: " + tag);
  return {tag.substr(0, open), tag.substr(open + 1, tag.size() - open - 2)};
}

Family family_of(const std::string& base) {
  if (base == "A" || base == "3.1" || base == "3.5" || base == "Cor3.5") return Family::A;
  if (base == "B" || base == "3.2" || base == "3.6" || base == "Cor3.6") return Family::B;
  if (base == "C" || base == "3.3" || base == "3.7" || base == "Cor3.7") return Family::C;
  if (base == "D" || base == "3.4" || base == "3.8" || base == "Cor3.8") return Family::D;
  throw std::invalid_argument("unknown theorem tag: " + base);
}

bool is_alpha_route(const std::string& base) {
  return base == "3.5" || base == "3.6" || base == "3.7" || base == "3.8";
}

void standing_conditions(Family fam, const Matrix& a, const HypothesisOptions& opt,
                         CondSet& c) {
  const MatrixClassReport r = classify(a, opt.eps, opt.eps_spectral);
  switch (fam) {
    case Family::A:
      c.require("A is an L-matrix", r.is_l);
      break;
    case Family::B:
      c.require("A is a nonsingular M-matrix", r.is_nonsingular_m);
      break;
    case Family::C:
      c.require("A is an L-matrix", r.is_l);
      c.require("A is irreducible", r.is_irreducible);
      break;
    case Family::D:
      c.require("A is a nonsingular M-matrix", r.is_nonsingular_m);
      c.require("A is irreducible", r.is_irreducible);
      break;
  }
}

/// Recovers the entrywise weights alpha from q = -alpha .* a; returns false
/// when q has an entry over a zero entry of a.
bool recover_alpha(const Matrix& a, const Matrix& q, Matrix& alpha) {
  const int n = a.order();
  alpha = Matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a(i, j) != 0.0)
        alpha(i, j) = -q(i, j) / a(i, j);
      else if (q(i, j) != 0.0)
        return false;
    }
  return true;
}

/// PA assembled entry by entry from the closed sums in alpha.
Matrix assemble_pa_from_alpha(const Matrix& a, const Matrix& alpha) {
  const int n = a.order();
  Matrix pa(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k)
          if (k != i) s += alpha(i, k) * a(i, k) * a(k, i);
        pa(i, j) = 1.0 - s;
      } else {
        double s = 0.0;
        for (int k = 0; k < n; ++k)
          if (k != i && k != j) s += alpha(i, k) * a(i, k) * a(k, j);
        pa(i, j) = (1.0 - alpha(i, j)) * a(i, j) - s;
      }
    }
  return pa;
}

}  // namespace

HypothesisReport check_hypotheses_q(const std::string& tag, const Matrix& a,
                                    const Matrix& q, double gamma, double omega,
                                    const HypothesisOptions& opt) {
  const ParsedTag parsed = parse_tag(tag);
  const Family fam = family_of(parsed.base);

  HypothesisReport rep;
  rep.theorem = tag;
  CondSet c;

  c.require("0 < omega <= 1", omega > 0.0 && omega <= 1.0);
  c.require("0 <= gamma <= 1", gamma >= 0.0 && gamma <= 1.0);
  standing_conditions(fam, a, opt, c);

  // Materialize PA and the gamma = 1 improvement matrix on the route the tag
  // demands.
  std::optional<HypCtx> ctx;
  if (is_alpha_route(parsed.base)) {
    Matrix alpha;
    if (!recover_alpha(a, q, alpha)) {
      c.require("Q has the entrywise -alpha*a form", false);
    } else {
      PreconditionerSpec q2{QVariant::Q2, Q2Params{alpha}};
      ctx.emplace(a, q, assemble_pa_from_alpha(a, alpha),
                  delta_closed_form(QVariant::Q2, a, q2, 1.0).entries, opt, gamma);
    }
  } else {
    ctx.emplace(a, q, precondition(a, q).pa, delta_generic(a, q, 1.0).entries,
                opt, gamma);
  }

  if (ctx) {
    // P = I + Q must be invertible for the preconditioned system to exist.
    bool p_ok = true;
    try {
      inverse(Matrix::identity(a.order()) + q, 1e-12);
    } catch (const SingularMatrixError&) {
      p_ok = false;
    }
    c.require("P = I + Q is nonsingular", p_ok);

    const HypCtx& x = *ctx;
    const std::string& b = parsed.base;
    const std::string& sel = parsed.selector;

    const auto select = [&](const char* name, bool cond_i, bool cond_ii,
                            bool cond_iii, bool cond_iv) {
      if (sel.empty()) {
        c.require(std::string(name) + ": one of conditions (i)-(iv)",
                  cond_i || cond_ii || cond_iii || cond_iv);
      } else if (sel == "i") {
        c.require(std::string(name) + "(i)", cond_i);
      } else if (sel == "ii") {
        c.require(std::string(name) + "(ii)", cond_ii);
      } else if (sel == "iii") {
        c.require(std::string(name) + "(iii)", cond_iii);
      } else if (sel == "iv") {
        c.require(std::string(name) + "(iv)", cond_iv);
      } else {
        throw std::invalid_argument("unknown selector in tag: " + tag);
      }
    };

    if (b == "A" || b == "3.1") {
      c.require("PA is an L-matrix", x.pa_is_l());
    } else if (b == "3.5") {
      c.require("preconditioned diagonal stays positive", x.diag_stays_positive());
      c.require("preconditioned off-diagonal stays nonpositive", x.pa_is_z());
    } else if (b == "Cor3.5") {
      c.require("Q dominated by -A off the diagonal", x.q_dominated());
      c.require("preconditioned diagonal stays positive", x.diag_stays_positive());
    } else if (b == "B" || b == "3.2") {
      c.require("PA is a Z-matrix", x.pa_is_z());
    } else if (b == "3.6") {
      c.require("preconditioned off-diagonal stays nonpositive", x.pa_is_z());
    } else if (b == "Cor3.6") {
      c.require("Q dominated by -A off the diagonal", x.q_dominated());
    } else if (b == "C" || b == "3.3" || b == "3.7") {
      if (b == "3.7")
        c.require("preconditioned diagonal stays positive", x.diag_stays_positive());
      else
        c.require("PA is an L-matrix", x.pa_is_l());
      bool cond_i = x.branch_i();
      bool cond_ii = x.branch_ii();
      if (b == "3.7") {
        // The strict forms carry their own off-diagonal sign requirement.
        const bool signs_i = [&] {
          for (int i = 0; i < x.n; ++i)
            for (int j = 0; j < x.n; ++j)
              if (i != j && x.a(i, j) < -x.eps && !x.lesssim_zero(x.pa(i, j)))
                return false;
          return true;
        }();
        cond_i = gamma < 1.0 && signs_i;
        cond_ii = gamma == 1.0 && signs_i && x.any_ii();
      }
      select(b.c_str(), cond_i, cond_ii,
             x.branch_iii() && (b != "3.7" || x.pa_is_z()),
             x.branch_iv(false) && (b != "3.7" || x.pa_is_z()));
    } else if (b == "Cor3.7") {
      c.require("Q dominated by -A off the diagonal", x.q_dominated());
      c.require("preconditioned diagonal stays positive", x.diag_stays_positive());
      if (sel.empty())
        c.require("Cor3.7: one of conditions (i)-(ii)", x.cor37_i() || x.cor37_ii());
      else if (sel == "i")
        c.require("Cor3.7(i)", x.cor37_i());
      else if (sel == "ii")
        c.require("Cor3.7(ii)", x.cor37_ii());
      else
        throw std::invalid_argument("unknown selector in tag: " + tag);
    } else if (b == "D" || b == "3.4" || b == "3.8") {
      if (b == "3.8")
        c.require("preconditioned off-diagonal stays nonpositive", x.pa_is_z());
      else
        c.require("PA is a Z-matrix", x.pa_is_z());
      const bool any33 = x.branch_i() || x.branch_ii() || x.branch_iii() ||
                         x.branch_iv(false);
      if (sel.empty())
        c.require(b + ": one of conditions (i)-(ii)", any33 || x.thm34_ii());
      else if (sel == "i")
        c.require(b + "(i)", any33);
      else if (sel == "ii")
        c.require(b + "(ii)", x.thm34_ii());
      else
        throw std::invalid_argument("unknown selector in tag: " + tag);
    } else if (b == "Cor3.8") {
      c.require("Q dominated by -A off the diagonal", x.q_dominated());
      c.require("Cor3.8: one of Thm3.4(ii), Cor3.7(i), Cor3.7(ii)",
                x.thm34_ii() || x.cor37_i() || x.cor37_ii());
    } else {
      throw std::invalid_argument("unknown theorem tag: " + tag);
    }
  }

  rep.failed_conditions = std::move(c.failed);
  rep.passed = rep.failed_conditions.empty();
  return rep;
}

HypothesisReport check_hypotheses(const std::string& tag, const Matrix& a,
                                  const PreconditionerSpec& spec, double gamma,
                                  double omega, const HypothesisOptions& opt) {
  return check_hypotheses_q(tag, a, build_q(spec, a), gamma, omega, opt);
}

ComparisonBranch classify_branch(double rho_base, double rho_pre, double tol,
                                 bool strict_required, double strict_margin) {
  if (!(std::isfinite(rho_base) && std::isfinite(rho_pre)) || rho_base < 0.0 ||
      rho_pre < 0.0)
    throw std::invalid_argument("classify_branch requires finite nonnegative radii");
  ComparisonBranch out{Branch::violation, rho_base, rho_pre, strict_required};
  if (std::abs(rho_base - 1.0) <= tol && std::abs(rho_pre - 1.0) <= tol) {
    out.branch = Branch::at_one;
  } else if (rho_base < 1.0 - tol) {
    const bool ordered = strict_required ? rho_pre < rho_base - strict_margin
                                         : rho_pre <= rho_base + tol;
    if (ordered) out.branch = Branch::below_one;
  } else if (rho_base > 1.0 + tol) {
    const bool ordered = strict_required ? rho_pre > rho_base + strict_margin
                                         : rho_pre >= rho_base - tol;
    if (ordered) out.branch = Branch::above_one;
  }
  return out;
}

Verdict verify_theorem(TheoremKind kind, const HypothesisReport& hyp,
                       const ComparisonBranch& branch) {
  if (!hyp.passed) return Verdict::vacuous;
  switch (kind) {
    case TheoremKind::A:
      return branch.branch != Branch::violation ? Verdict::confirmed
                                                : Verdict::refuted;
    case TheoremKind::B:
      return branch.branch == Branch::below_one ? Verdict::confirmed
                                                : Verdict::refuted;
    case TheoremKind::C:
      return branch.branch != Branch::violation ? Verdict::confirmed
                                                : Verdict::refuted;
    case TheoremKind::D:
      return branch.branch == Branch::below_one ? Verdict::confirmed
                                                : Verdict::refuted;
  }
  return Verdict::refuted;
}

}  // namespace precondaor
