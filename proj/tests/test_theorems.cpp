#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "precondaor/aor.hpp"
#include "precondaor/harness.hpp"
#include "precondaor/spectral.hpp"
#include "precondaor/theorems.hpp"
#include "test_util.hpp"

using namespace precondaor;

namespace {

std::mt19937_64 g_rng(7001);

Matrix dense_l_matrix(int n, std::mt19937_64& rng, double mag) {
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  Matrix a(n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 1.0;
    for (int j = 0; j < n; ++j)
      if (i != j) a(i, j) = -mag * unit(rng);
  }
  return a;
}

double radius(const Matrix& a, double gamma, double omega) {
  return spectral_radius(aor_iteration_matrix(a, AorParams(gamma, omega)), 1e-12).rho;
}

/// Singular irreducible Z-pattern with exact (dyadic) zero row sums.
Matrix singular_cycle_matrix() {
  Matrix a = Matrix::identity(4);
  for (int i = 0; i < 4; ++i) {
    a(i, (i + 1) % 4) = -0.5;
    a(i, (i + 2) % 4) = -0.5;
  }
  return a;
}

}  // namespace

TEST_CASE("classify_branch sorts the trichotomy") {
  CHECK(classify_branch(0.8, 0.7, 1e-7, true).branch == Branch::below_one);
  CHECK(classify_branch(1.0, 1.0).branch == Branch::at_one);
  CHECK(classify_branch(0.8, 0.85).branch == Branch::violation);
  CHECK(classify_branch(1.2, 1.3).branch == Branch::above_one);
  CHECK(classify_branch(1.2, 1.3, 1e-7, true).branch == Branch::above_one);
  CHECK(classify_branch(0.8, 0.8, 1e-7, false).branch == Branch::below_one);
  // equal radii are not strictly ordered
  CHECK(classify_branch(0.8, 0.8, 1e-7, true).branch == Branch::violation);
  CHECK_THROWS(classify_branch(-0.1, 0.5));
}

TEST_CASE("verify_theorem maps hypotheses and branches to verdicts") {
  HypothesisReport pass{"3.1", true, {}};
  HypothesisReport fail{"3.1", false, {"A is an L-matrix"}};

  CHECK(verify_theorem(TheoremKind::A, fail, classify_branch(0.5, 0.9)) ==
        Verdict::vacuous);
  CHECK(verify_theorem(TheoremKind::A, pass, classify_branch(0.9, 0.5)) ==
        Verdict::confirmed);
  CHECK(verify_theorem(TheoremKind::A, pass, classify_branch(0.5, 0.9)) ==
        Verdict::refuted);
  CHECK(verify_theorem(TheoremKind::B, pass, classify_branch(1.2, 1.3)) ==
        Verdict::refuted);
  CHECK(verify_theorem(TheoremKind::C, pass,
                       classify_branch(1.2, 1.3, 1e-7, true)) == Verdict::confirmed);
  CHECK(verify_theorem(TheoremKind::D, pass,
                       classify_branch(0.9, 0.8, 1e-7, true)) == Verdict::confirmed);
  CHECK(verify_theorem(TheoremKind::D, pass,
                       classify_branch(0.9, 0.9, 1e-7, true)) == Verdict::refuted);
}

TEST_CASE("hypothesis report invariant: passed iff nothing failed") {
  const Matrix a = dense_l_matrix(5, g_rng, 0.15);
  const PreconditionerSpec spec{QVariant::Q13, Q13Params{0.5}};
  for (const char* tag : {"3.1", "3.2", "3.3", "3.4", "Cor3.5", "Cor3.7"}) {
    const HypothesisReport rep = check_hypotheses(tag, a, spec, 0.5, 0.75);
    CHECK(rep.passed == rep.failed_conditions.empty());
  }
}

TEST_CASE("base theorem hypotheses pass on a well-behaved instance") {
  // dense, strongly dominant, irreducible
  const Matrix a = gen_m_matrix(6, 1.0, 0.4, 99, true);
  const PreconditionerSpec spec{QVariant::Q13, Q13Params{1.0}};
  for (const char* tag : {"3.1", "3.2", "3.3", "3.4"}) {
    const HypothesisReport rep = check_hypotheses(tag, a, spec, 0.5, 0.75);
    INFO(tag);
    for (const auto& c : rep.failed_conditions) INFO(c);
    CHECK(rep.passed);
  }
}

TEST_CASE("unknown tags are rejected") {
  const Matrix a = dense_l_matrix(4, g_rng, 0.2);
  const PreconditionerSpec spec{QVariant::Q13, Q13Params{1.0}};
  CHECK_THROWS_AS(check_hypotheses("3.99", a, spec, 0.5, 0.75),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_hypotheses("3.3(v)", a, spec, 0.5, 0.75),
                  std::invalid_argument);
}

TEST_CASE("the 6x6 counterexample defeats the strict hypotheses") {
  const Matrix a = counterexample_6x6();
  const PreconditionerSpec spec{
      QVariant::Q25,
      Q25Params{Q6Params{-1, {1.0, 1.0, 1.0, 1.0, 1.0}},
                Q17Params{{1.0, 1.0, 1.0, 1.0, 1.0}}}};

  // the non-strict family still applies: PA stays an L-matrix
  CHECK(check_hypotheses("3.1", a, spec, 0.5, 0.5).passed);

  // but the preconditioned matrix is reducible, so every strict branch fails
  const HypothesisReport rep = check_hypotheses("3.3", a, spec, 0.5, 0.5);
  CHECK_FALSE(rep.passed);
  const HypothesisReport branch_i = check_hypotheses("3.3(i)", a, spec, 0.5, 0.5);
  CHECK_FALSE(branch_i.passed);

  const Matrix q = build_q(spec, a);
  CHECK_FALSE(is_irreducible(precondition(a, q).pa));
}

TEST_CASE("the 4x4 counterexample is vacuous for the strict family") {
  const Matrix a = counterexample_4x4();
  const PreconditionerSpec spec{QVariant::Q8, Q8Params{{1.0, 1.0, 1.0}}};
  const HypothesisReport rep = check_hypotheses("3.3", a, spec, 0.5, 0.75);
  CHECK_FALSE(rep.passed);

  const Matrix q = build_q(spec, a);
  CHECK_FALSE(is_irreducible(precondition(a, q).pa));

  const double rho_base = radius(a, 0.5, 0.75);
  const double rho_pre = radius(precondition(a, q).pa, 0.5, 0.75);
  const ComparisonBranch br = classify_branch(rho_base, rho_pre, 1e-7, true);
  CHECK(verify_theorem(TheoremKind::C, rep, br) == Verdict::vacuous);
}

TEST_CASE("theorem B confirmed on a random 8x8 M-matrix with the upper catalog") {
  const Matrix a = gen_m_matrix(8, 0.8, 0.25, 4242, true);
  const PreconditionerSpec spec{QVariant::Q13, Q13Params{1.0}};
  const HypothesisReport hyp = check_hypotheses("3.2", a, spec, 0.5, 0.5);
  REQUIRE(hyp.passed);

  const Matrix q = build_q(spec, a);
  const double rho_base = dense_radius(aor_iteration_matrix(a, AorParams(0.5, 0.5)));
  const double rho_pre = dense_radius(
      aor_iteration_matrix(precondition(a, q).pa, AorParams(0.5, 0.5)));
  const ComparisonBranch br = classify_branch(rho_base, rho_pre);
  CHECK(verify_theorem(TheoremKind::B, hyp, br) == Verdict::confirmed);
}

TEST_CASE("entrywise-form tags agree with the matrix-form tags") {
  // On -alpha .* a preconditioners the two evaluation routes must coincide.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::pair<const char*, const char*> pairs[] = {
      {"3.1", "3.5"}, {"3.2", "3.6"}, {"3.3", "3.7"}, {"3.4", "3.8"}};
  int compared = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const int n = 3 + static_cast<int>(g_rng() % 6);
    const Matrix a = trial % 2 ? gen_m_matrix(n, 0.7, 0.2 + 0.6 * unit(g_rng),
                                              g_rng(), true)
                               : gen_l_matrix(n, 0.7, true, g_rng());
    Matrix alpha(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) alpha(i, j) = unit(g_rng) < 0.7 ? unit(g_rng) : 0.0;
    const PreconditionerSpec spec{QVariant::Q2, Q2Params{alpha}};
    Matrix q(1);
    try {
      q = build_q(spec, a);
    } catch (const SpecError&) {
      continue;  // all-zero draw
    }
    const double gamma = unit(g_rng) < 0.3 ? 1.0 : unit(g_rng);
    const double omega = std::max(gamma, 0.05 + 0.95 * unit(g_rng));
    for (const auto& [mtag, atag] : pairs) {
      const HypothesisReport m = check_hypotheses_q(mtag, a, q, gamma, omega);
      const HypothesisReport e = check_hypotheses_q(atag, a, q, gamma, omega);
      INFO(mtag, " vs ", atag, " n=", n, " gamma=", gamma);
      CHECK(m.passed == e.passed);
      ++compared;
    }
  }
  CHECK(compared > 600);
}

TEST_CASE("trichotomy holds on a random mini-campaign") {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int confirmed = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 3 + static_cast<int>(g_rng() % 8);
    const Matrix a = gen_l_matrix(n, 0.6, true, g_rng());
    const PreconditionerSpec spec =
        trial % 2 ? PreconditionerSpec{QVariant::Q13, Q13Params{0.5 + 0.5 * unit(g_rng)}}
                  : PreconditionerSpec{QVariant::Q4, Q4Params{0.5 + 0.5 * unit(g_rng)}};
    const double gamma = 0.25 * static_cast<double>(g_rng() % 5);
    const double omega = 0.25 * (1.0 + static_cast<double>(g_rng() % 4));

    const Matrix q = build_q(spec, a);
    const HypothesisReport hyp = check_hypotheses_q("3.1", a, q, gamma, omega);
    if (!hyp.passed) continue;

    const double rho_base = radius(a, gamma, omega);
    if (std::abs(rho_base - 1.0) < 1e-5) continue;  // singular boundary
    const double rho_pre = radius(precondition(a, q).pa, gamma, omega);
    const Verdict v = verify_theorem(TheoremKind::A, hyp,
                                     classify_branch(rho_base, rho_pre));
    CHECK(v == Verdict::confirmed);
    ++confirmed;
  }
  CHECK(confirmed > 100);
}

TEST_CASE("strictness under irreducibility") {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int strict_rows = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(g_rng() % 6);
    const Matrix a = gen_m_matrix(n, 0.8, 0.1 + 0.5 * unit(g_rng), g_rng(), true);
    const PreconditionerSpec spec{QVariant::Q17, Q17Params{{0.5 + 0.5 * unit(g_rng)}}};
    Matrix q(1);
    try {
      q = build_q(spec, a);
    } catch (const SpecError&) {
      continue;
    }
    const double gamma = 0.75 * unit(g_rng);
    const double omega = gamma + (1.0 - gamma) * std::max(unit(g_rng), 0.1);
    const HypothesisReport hyp = check_hypotheses_q("3.4", a, q, gamma, omega);
    if (!hyp.passed) continue;

    const double rho_base = dense_radius(aor_iteration_matrix(a, AorParams(gamma, omega)));
    const double rho_pre = dense_radius(
        aor_iteration_matrix(precondition(a, q).pa, AorParams(gamma, omega)));
    REQUIRE(rho_base < 1.0 - 1e-6);
    CHECK(rho_pre < rho_base - 1e-9);
    ++strict_rows;
  }
  CHECK(strict_rows > 60);
}

TEST_CASE("exactly singular instances land on the at-one branch") {
  const Matrix a = singular_cycle_matrix();
  const MatrixClassReport r = classify(a);
  CHECK(r.is_z);
  CHECK(r.is_irreducible);

  const PreconditionerSpec spec{QVariant::Q17, Q17Params{{0.5, 0.5, 0.5}}};
  const Matrix q = build_q(spec, a);
  const PreconditionedSystem sys = precondition(a, q);

  for (double w : {0.5, 0.75, 1.0}) {
    const double rho_base = radius(a, w, w);
    const double rho_pre = radius(sys.pa, w, w);
    CHECK(std::abs(rho_base - 1.0) <= 1e-7);
    const ComparisonBranch br = classify_branch(rho_base, rho_pre);
    CHECK(br.branch == Branch::at_one);
    const HypothesisReport hyp = check_hypotheses_q("3.1", a, q, w, w);
    REQUIRE(hyp.passed);
    CHECK(verify_theorem(TheoremKind::A, hyp, br) == Verdict::confirmed);
  }
}

TEST_CASE("constructed splitting pairs obey the strict comparison lemma") {
  // A = M1 - N1 (forward-weighted) against A = M2 - N2 (diagonal): when the
  // premises hold, the first splitting iterates strictly faster.
  std::uniform_real_distribution<double> unit(0.2, 1.0);
  int verified = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(g_rng() % 6);
    const Matrix a = gen_m_matrix(n, 0.8, 0.3, g_rng(), true);
    const double t = unit(g_rng);

    const Matrix jac = aor_iteration_matrix(a, AorParams(0.0, 1.0));
    if (!is_irreducible(jac)) continue;
    const SpectralResult perron = perron_pair(jac, 1e-12);
    const auto& x = *perron.right_vec;

    // premises: M2 x > M1 x >= 0 with M2 = I, M1 = I - tL
    const Matrix l = decompose_dlu(a).l;
    const auto lx = l.apply(x);
    bool m1x_nonneg = true, gap = false;
    for (int i = 0; i < n; ++i) {
      if (x[i] - t * lx[i] < 0.0) m1x_nonneg = false;
      if (t * lx[i] > 1e-12) gap = true;
    }
    if (!m1x_nonneg || !gap) continue;

    const double rho1 = dense_radius(aor_iteration_matrix(a, AorParams(t, 1.0)));
    const double rho2 = perron.rho;
    CHECK(rho1 < rho2);
    ++verified;
  }
  CHECK(verified > 40);
}

TEST_CASE("dominated-entry corollary evaluates on half-weighted lower updates") {
  // q = 0.5 L is dominated by -A entrywise; on diagonally dominant input the
  // diagonal survives, so the corollary hypotheses pass at a high rate.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int passed = 0, total = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(g_rng() % 6);
    const Matrix a = gen_m_matrix(n, 0.8, 0.2, g_rng(), true);
    const PreconditionerSpec spec{QVariant::Q4, Q4Params{0.5}};
    Matrix q(1);
    try {
      q = build_q(spec, a);
    } catch (const SpecError&) {
      continue;
    }
    const HypothesisReport rep = check_hypotheses_q("Cor3.5", a, q, 0.3, 0.8);
    ++total;
    if (rep.passed) ++passed;

    // domination is structural for alpha <= 1 on a Z-matrix
    bool dominated = true;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && q(i, j) > -a(i, j) + 1e-12) dominated = false;
    CHECK(dominated);
  }
  REQUIRE(total > 150);
  CHECK(passed > total * 9 / 10);
}

TEST_CASE("strict corollaries accept a strictly dominated instance") {
  const Matrix a = gen_m_matrix(6, 1.0, 0.3, 2024, true);
  const PreconditionerSpec spec{QVariant::Q4, Q4Params{0.5}};
  const Matrix q = build_q(spec, a);
  const HypothesisReport rep = check_hypotheses_q("Cor3.7", a, q, 0.3, 0.8);
  for (const auto& c : rep.failed_conditions) INFO(c);
  CHECK(rep.passed);
  const HypothesisReport rep8 = check_hypotheses_q("Cor3.8", a, q, 0.3, 0.8);
  CHECK(rep8.passed);
}

TEST_CASE("strict comparison survives a reducible preconditioned matrix") {
  // Branches (iii) and (iv) of the strict family do not need the
  // preconditioned matrix to stay irreducible; the comparison remains
  // strict. Both 2x2 constructions below make PA reducible on purpose.
  SUBCASE("gamma = 1: last-row product condition") {
    const Matrix a{{1.0, -0.5}, {-0.5, 1.0}};
    const PreconditionerSpec spec{QVariant::Q5, Q5Params{1, {1.0}}};
    const Matrix q = build_q(spec, a);
    const PreconditionedSystem sys = precondition(a, q);
    REQUIRE_FALSE(is_irreducible(sys.pa));

    const HypothesisReport hyp = check_hypotheses_q("3.3(iv)", a, q, 1.0, 1.0);
    for (const auto& c : hyp.failed_conditions) INFO(c);
    REQUIRE(hyp.passed);

    const double rho_base = dense_radius(aor_iteration_matrix(a, AorParams(1.0, 1.0)));
    const double rho_pre =
        dense_radius(aor_iteration_matrix(sys.pa, AorParams(1.0, 1.0)));
    CHECK(rho_base == doctest::Approx(0.25));
    CHECK(rho_pre == doctest::Approx(0.0));
    CHECK(verify_theorem(TheoremKind::C, hyp,
                         classify_branch(rho_base, rho_pre, 1e-7, true)) ==
          Verdict::confirmed);
  }
  SUBCASE("gamma < 1: every leading row carries a positive entry") {
    const Matrix a{{1.0, -0.5}, {-0.5, 1.0}};
    const PreconditionerSpec spec{QVariant::Q17, Q17Params{{1.0}}};
    const Matrix q = build_q(spec, a);
    const PreconditionedSystem sys = precondition(a, q);
    REQUIRE_FALSE(is_irreducible(sys.pa));

    const HypothesisReport hyp = check_hypotheses_q("3.3(iii)", a, q, 0.5, 0.75);
    for (const auto& c : hyp.failed_conditions) INFO(c);
    REQUIRE(hyp.passed);

    const double rho_base = dense_radius(aor_iteration_matrix(a, AorParams(0.5, 0.75)));
    const double rho_pre =
        dense_radius(aor_iteration_matrix(sys.pa, AorParams(0.5, 0.75)));
    CHECK(rho_pre < rho_base);
    CHECK(rho_base < 1.0);
    CHECK(verify_theorem(TheoremKind::C, hyp,
                         classify_branch(rho_base, rho_pre, 1e-7, true)) ==
          Verdict::confirmed);
  }
}

TEST_CASE("domination branch of the strict M-matrix theorem") {
  // Upper-catalog updates push the lower triangle of PA below A entrywise
  // and shrink a diagonal entry, which is exactly what the branch needs.
  const Matrix a{{1.0, -0.2, -0.3}, {-0.3, 1.0, -0.2}, {-0.2, -0.3, 1.0}};
  REQUIRE(classify(a).is_nonsingular_m);
  REQUIRE(classify(a).is_irreducible);

  const PreconditionerSpec spec{QVariant::Q13, Q13Params{1.0}};
  const Matrix q = build_q(spec, a);
  const PreconditionedSystem sys = precondition(a, q);

  // hand check of the dominated lower triangle
  CHECK(sys.pa(1, 0) == doctest::Approx(-0.34));
  CHECK(sys.pa(0, 0) == doctest::Approx(0.88));

  const HypothesisReport hyp = check_hypotheses_q("3.4(ii)", a, q, 0.5, 0.75);
  for (const auto& c : hyp.failed_conditions) INFO(c);
  REQUIRE(hyp.passed);

  const double rho_base = dense_radius(aor_iteration_matrix(a, AorParams(0.5, 0.75)));
  const double rho_pre =
      dense_radius(aor_iteration_matrix(sys.pa, AorParams(0.5, 0.75)));
  CHECK(verify_theorem(TheoremKind::D, hyp,
                       classify_branch(rho_base, rho_pre, 1e-7, true)) ==
        Verdict::confirmed);

  // lower-catalog updates lift lower entries instead, breaking domination
  const Matrix q4 = build_q({QVariant::Q4, Q4Params{1.0}}, a);
  CHECK_FALSE(check_hypotheses_q("3.4(ii)", a, q4, 0.5, 0.75).passed);
}

TEST_CASE("branch selectors gate on the relaxation parameter") {
  const Matrix a = gen_m_matrix(5, 1.0, 0.3, 314, true);
  const PreconditionerSpec spec{QVariant::Q13, Q13Params{1.0}};
  const Matrix q = build_q(spec, a);
  CHECK(check_hypotheses_q("3.3(ii)", a, q, 1.0, 1.0).passed);
  CHECK_FALSE(check_hypotheses_q("3.3(ii)", a, q, 0.5, 1.0).passed);
  CHECK(check_hypotheses_q("3.3(i)", a, q, 0.5, 1.0).passed);
  CHECK_FALSE(check_hypotheses_q("3.3(i)", a, q, 1.0, 1.0).passed);
}

TEST_CASE("strict trichotomy holds across convergent and divergent instances") {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int confirmed = 0, above = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(g_rng() % 6);
    const Matrix a = gen_l_matrix(n, 0.7, true, g_rng());
    const PreconditionerSpec spec{QVariant::Q17, Q17Params{{1.0}}};
    Matrix q(1);
    try {
      q = build_q(spec, a);
    } catch (const SpecError&) {
      continue;
    }
    const double gamma = 0.75 * unit(g_rng);
    const double omega = 0.25 + 0.75 * unit(g_rng);
    const HypothesisReport hyp = check_hypotheses_q("3.3", a, q, gamma, omega);
    if (!hyp.passed) continue;

    const double rho_base = dense_radius(aor_iteration_matrix(a, AorParams(gamma, omega)));
    if (std::abs(rho_base - 1.0) < 1e-5) continue;
    const double rho_pre = dense_radius(
        aor_iteration_matrix(precondition(a, q).pa, AorParams(gamma, omega)));
    const ComparisonBranch br = classify_branch(rho_base, rho_pre, 1e-7, true);
    CHECK(verify_theorem(TheoremKind::C, hyp, br) == Verdict::confirmed);
    ++confirmed;
    if (br.branch == Branch::above_one) ++above;
  }
  CHECK(confirmed > 100);
  CHECK(above > 5);  // the divergent side of the trichotomy is exercised
}
