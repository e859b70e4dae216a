#include <doctest.h>

#include <cmath>
#include <random>

#include "precondaor/aor.hpp"
#include "precondaor/harness.hpp"
#include "precondaor/spectral.hpp"
#include "test_util.hpp"

using namespace precondaor;

TEST_CASE("aor params flag the extended range") {
  CHECK_FALSE(AorParams(0.5, 1.0).extended_range);
  CHECK(AorParams(1.5, 1.0).extended_range);
  CHECK(AorParams(0.5, 1.5).extended_range);
  CHECK_THROWS_AS(AorParams(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("aor splitting special cases") {
  SUBCASE("gamma = omega = 1 on a unit diagonal gives M = I - L, N = U") {
    const Matrix a{{1.0, -0.5}, {-1.0, 1.0}};
    const Splitting s = aor_splitting(a, AorParams(1.0, 1.0));
    CHECK(s.m == Matrix{{1.0, 0.0}, {-1.0, 1.0}});
    CHECK(s.n_mat.max_abs_diff(Matrix{{0.0, 0.5}, {0.0, 0.0}}) == 0.0);
  }
  SUBCASE("gamma = 0, omega = 1 gives M = I, N = L + U") {
    const Matrix a{{1.0, -0.5}, {-1.0, 1.0}};
    const Splitting s = aor_splitting(a, AorParams(0.0, 1.0));
    CHECK(s.m == Matrix::identity(2));
    CHECK(s.n_mat.max_abs_diff(Matrix{{0.0, 0.5}, {1.0, 0.0}}) == 0.0);
  }
  SUBCASE("gamma = 0.5, omega = 1 by direct substitution") {
    const Matrix a{{1.0, -0.5}, {-1.0, 1.0}};
    const Splitting s = aor_splitting(a, AorParams(0.5, 1.0));
    CHECK(s.m.max_abs_diff(Matrix{{1.0, 0.0}, {-0.5, 1.0}}) == 0.0);
    CHECK(s.n_mat.max_abs_diff(Matrix{{0.0, 0.5}, {0.5, 0.0}}) == 0.0);
  }
}

TEST_CASE("splitting identity M - N = A is exact for arbitrary parameters") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> par(0.05, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    Matrix a = testutil::random_matrix(n, rng);
    for (int i = 0; i < n; ++i) a(i, i) = 1.0 + par(rng);
    const Splitting s = aor_splitting(a, AorParams(par(rng), par(rng)));
    CHECK((s.m - s.n_mat).max_abs_diff(a) <= 1e-13);
  }
}

TEST_CASE("iteration matrix collapses to the classic methods") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Matrix a = testutil::random_l_matrix(n, rng, 0.8, 0.6);
    const DluSplit dlu = decompose_dlu(a);

    // Jacobi: T(0, 1) = L + U for a unit diagonal.
    const Matrix jac = aor_iteration_matrix(a, AorParams(0.0, 1.0));
    CHECK(jac.max_abs_diff(dlu.l + dlu.u) <= 1e-13);

    // Damped Jacobi: T(0, 1/2) = I/2 + (L + U)/2.
    const Matrix half = aor_iteration_matrix(a, AorParams(0.0, 0.5));
    CHECK(half.max_abs_diff(0.5 * Matrix::identity(n) + 0.5 * (dlu.l + dlu.u)) <=
          1e-13);

    // Gauss-Seidel: T(1, 1) = (I - L)^-1 U.
    const Matrix gs = aor_iteration_matrix(a, AorParams(1.0, 1.0));
    const Matrix gs_ref = inverse(Matrix::identity(n) - dlu.l) * dlu.u;
    CHECK(gs.max_abs_diff(gs_ref) <= 1e-12);

    // SOR: T(w, w) = (I - w L)^-1 [(1 - w) I + w U].
    const double w = 0.25 + 0.5 * (static_cast<double>(rng() % 100) / 100.0);
    const Matrix sor = aor_iteration_matrix(a, AorParams(w, w));
    const Matrix sor_ref = inverse(Matrix::identity(n) - w * dlu.l) *
                           ((1.0 - w) * Matrix::identity(n) + w * dlu.u);
    CHECK(sor.max_abs_diff(sor_ref) <= 1e-12);
  }
}

TEST_CASE("gauss-seidel matrix of the 2x2 non-M L-matrix has radius 4") {
  const Matrix a{{1.0, -2.0}, {-2.0, 1.0}};
  const Matrix gs = aor_iteration_matrix(a, AorParams(1.0, 1.0));
  CHECK(gs.max_abs_diff(Matrix{{0.0, 2.0}, {0.0, 4.0}}) <= 1e-14);
  CHECK(spectral_radius(gs).rho == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("aor_solve on reference problems") {
  SUBCASE("identity converges in one step") {
    const Matrix a = Matrix::identity(3);
    const SolveReport rep =
        aor_solve(a, {1.0, -2.0, 3.0}, AorParams(1.0, 1.0), {0.0, 0.0, 0.0});
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    CHECK(rep.solution[1] == doctest::Approx(-2.0));
  }
  SUBCASE("random M-matrix converges and meets the residual target") {
    std::mt19937_64 rng(35);
    const Matrix a = gen_m_matrix(5, 0.8, 0.3, rng(), true);
    const std::vector<double> b{1.0, 0.5, -0.25, 2.0, 0.0};
    const SolveReport rep =
        aor_solve(a, b, AorParams(0.9, 0.9), std::vector<double>(5, 0.0), 1e-10);
    REQUIRE(rep.converged);
    const auto ax = a.apply(rep.solution);
    double resid = 0.0;
    for (int i = 0; i < 5; ++i) resid = std::max(resid, std::abs(ax[i] - b[i]));
    CHECK(resid <= 1e-10 * (1.0 + 2.0));
  }
  SUBCASE("divergent instance trips the residual cap") {
    const Matrix a{{1.0, -2.0}, {-2.0, 1.0}};
    const SolveReport rep =
        aor_solve(a, {1.0, 1.0}, AorParams(1.0, 1.0), {0.0, 0.0}, 1e-10, 4000);
    CHECK_FALSE(rep.converged);
    CHECK(rep.iterations < 4000);  // stopped by the cap, not the budget
  }
}

TEST_CASE("classify_splitting on reference splittings") {
  SUBCASE("gauss-seidel splitting of an L-matrix is regular") {
    std::mt19937_64 rng(37);
    const Matrix a = testutil::random_l_matrix(6, rng, 0.7, 0.4);
    const Splitting s = aor_splitting(a, AorParams(1.0, 1.0));
    CHECK(s.kind == SplittingKind::regular);
  }
  SUBCASE("explicit non-example") {
    const Matrix a{{2.0, 0.0}, {0.0, 1.0}};
    const Splitting s{Matrix::identity(2),
                      Matrix{{-1.0, 0.0}, {0.0, 0.0}}, SplittingKind::none};
    CHECK(classify_splitting(a, s) == SplittingKind::none);
  }
}

TEST_CASE("aor splittings of L-matrices are at least weak regular") {
  std::mt19937_64 rng(39);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int weak_or_better = 0, total = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const Matrix a = testutil::random_l_matrix(n, rng, 0.6, 0.8);
    const double w = 0.05 + 0.95 * unit(rng);
    const double g = w * unit(rng);  // 0 <= gamma <= omega
    const Splitting s = aor_splitting(a, AorParams(g, w));
    ++total;
    if (s.kind == SplittingKind::regular || s.kind == SplittingKind::weak_regular)
      ++weak_or_better;

    // the defining inequalities at tolerance 1e-10
    CHECK(cone_sign(inverse(s.m), 1e-10) != ConeOrder::NONE);
    CHECK(cone_sign(aor_iteration_matrix(a, AorParams(g, w)), 1e-10) !=
          ConeOrder::NONE);
  }
  CHECK(weak_or_better == total);
}

TEST_CASE("extrapolate_rho") {
  CHECK(extrapolate_rho(0.37, 0.8, 0.8) == doctest::Approx(0.37));
  CHECK(extrapolate_rho(1.0, 0.3, 0.9) == doctest::Approx(1.0));
  CHECK(extrapolate_rho(0.5, 1.0, 0.5) == doctest::Approx(0.75));
  CHECK_THROWS_AS(extrapolate_rho(0.5, 0.0, 0.5), std::domain_error);
}

TEST_CASE("spectral extrapolation identity for omega <= gamma") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const Matrix a = gen_l_matrix(n, 0.6, true, rng());
    const double g = 0.2 + 0.8 * unit(rng);
    const double w = g * (0.1 + 0.9 * unit(rng));  // 0 < omega <= gamma
    const double rho_sor = spectral_radius(aor_iteration_matrix(a, AorParams(g, g)),
                                           1e-12).rho;
    const double rho_aor = spectral_radius(aor_iteration_matrix(a, AorParams(g, w)),
                                           1e-12).rho;
    CHECK(std::abs(rho_aor - extrapolate_rho(rho_sor, g, w)) <= 1e-7);
  }
}

TEST_CASE("convergence of the iteration matches rho < 1") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const Matrix a = trial % 2 ? gen_m_matrix(n, 0.7, 0.3, rng(), true)
                               : gen_l_matrix(n, 0.7, true, rng());
    const double w = 0.3 + 0.7 * unit(rng);
    const double g = w * unit(rng);
    const double rho =
        spectral_radius(aor_iteration_matrix(a, AorParams(g, w)), 1e-11).rho;
    if (std::abs(rho - 1.0) < 1e-3) continue;  // too close to the boundary

    std::vector<double> b(n, 1.0);
    const int budget = rho < 1.0
                           ? std::min(200000, 20 + static_cast<int>(10.0 * n / (1.0 - rho)))
                           : 4000;
    const SolveReport rep =
        aor_solve(a, b, AorParams(g, w), std::vector<double>(n, 0.0), 1e-8, budget);
    CHECK(rep.converged == (rho < 1.0 - 1e-6));
  }
}
