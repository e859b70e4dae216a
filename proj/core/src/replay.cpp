#include <sstream>

#include "precondaor/harness.hpp"

namespace precondaor {

Matrix counterexample_4x4() {
  return Matrix{{1.0, -0.5, 0.0, -1.0},
                {-1.0, 1.0, 0.0, 0.0},
                {0.0, -1.0, 1.0, 0.0},
                {0.0, 0.0, -1.0, 1.0}};
}

Matrix counterexample_6x6() {
  return Matrix{{1.0, 0.0, 0.0, 0.0, 0.0, -0.5},
                {-0.5, 1.0, -0.5, 0.0, 0.0, 0.0},
                {0.0, -0.5, 1.0, 0.0, 0.0, 0.0},
                {0.0, -0.5, 0.0, 1.0, 0.0, 0.0},
                {0.0, 0.0, 0.0, 0.0, 1.0, -0.5},
                {-0.5, -0.5, 0.0, -0.5, -0.5, 1.0}};
}

namespace {

struct Checker {
  ReplayReport rep;

  void check(const std::string& what, bool ok) {
    rep.lines.push_back(std::string(ok ? "pass: " : "FAIL: ") + what);
    if (!ok) rep.all_passed = false;
  }
};

}  // namespace

ReplayReport replay_counterexamples() {
  Checker c;
  c.rep.all_passed = true;

  const std::vector<std::pair<double, double>> grid = {
      {0.0, 1.0}, {0.5, 0.5}, {0.75, 0.9}, {1.0, 1.0}};

  {
    const Matrix a = counterexample_4x4();
    const MatrixClassReport r = classify(a);
    c.check("4x4: A is an L-matrix", r.is_l);
    c.check("4x4: A is irreducible", r.is_irreducible);

    // The subdiagonal weights: the last one pinned to 1, the free ones
    // scanned to show the degeneracy is not knife-edge.
    for (double a1 : {0.5, 1.0}) {
      for (double a2 : {0.5, 1.0}) {
        const PreconditionerSpec spec{QVariant::Q8, Q8Params{{a1, a2, 1.0}}};
        const Matrix q = build_q(spec, a);
        const PreconditionedSystem sys = precondition(a, q);
        bool all_reducible = true;
        for (const auto& [g, w] : grid) {
          const Matrix t = aor_iteration_matrix(sys.pa, AorParams(g, w));
          if (is_irreducible(t, 0.0)) all_reducible = false;
        }
        std::ostringstream what;
        what << "4x4: q8 alpha=(" << a1 << "," << a2
             << ",1) preconditioned iteration matrix reducible on the grid";
        c.check(what.str(), all_reducible);
      }
    }
  }

  {
    const Matrix a = counterexample_6x6();
    const MatrixClassReport r = classify(a);
    c.check("6x6: A is an L-matrix", r.is_l);
    c.check("6x6: A is irreducible", r.is_irreducible);

    const PreconditionerSpec spec{
        QVariant::Q25, Q25Params{Q6Params{-1, {1.0, 1.0, 1.0, 1.0, 1.0}},
                                 Q17Params{{1.0, 1.0, 1.0, 1.0, 1.0}}}};
    const Matrix q = build_q(spec, a);
    const PreconditionedSystem sys = precondition(a, q);
    bool all_reducible = true;
    for (double w : {0.5, 1.0}) {
      const Matrix t = aor_iteration_matrix(sys.pa, AorParams(w, w));
      if (is_irreducible(t, 0.0)) all_reducible = false;
    }
    c.check("6x6: q25 all-ones preconditioned SOR iteration matrix reducible",
            all_reducible);
  }

  return c.rep;
}

}  // namespace precondaor
