#include "pcmrank/solvers.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using namespace pcmrank;

namespace {

IncompletePCM consistent_3x3() {
  // built from weights (0.5, 0.25, 0.25)
  IncompletePCM pcm({"A", "B", "C"});
  pcm.set_pair(0, 1, 2.0);
  pcm.set_pair(0, 2, 2.0);
  pcm.set_pair(1, 2, 1.0);
  return pcm;
}

}  // namespace

TEST_SUITE("llsm_weights") {
  TEST_CASE("two players with a 4:1 ratio") {
    IncompletePCM pcm({"A", "B"});
    pcm.set_pair(0, 1, 4.0);
    WeightVector w = llsm_weights(pcm);
    CHECK(w.weights[0] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(w.weights[1] == doctest::Approx(0.2).epsilon(1e-12));
  }

  TEST_CASE("consistent matrix is recovered exactly") {
    WeightVector w = llsm_weights(consistent_3x3());
    CHECK(w.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w.weights[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(w.weights[2] == doctest::Approx(0.25).epsilon(1e-12));
  }

  TEST_CASE("path graph forces the chained ratios") {
    IncompletePCM pcm({"A", "B", "C", "D"});
    pcm.set_pair(0, 1, 2.0);
    pcm.set_pair(1, 2, 2.0);
    pcm.set_pair(2, 3, 2.0);
    WeightVector w = llsm_weights(pcm);
    CHECK(w.weights[0] == doctest::Approx(8.0 / 15.0).epsilon(1e-10));
    CHECK(w.weights[1] == doctest::Approx(4.0 / 15.0).epsilon(1e-10));
    CHECK(w.weights[2] == doctest::Approx(2.0 / 15.0).epsilon(1e-10));
    CHECK(w.weights[3] == doctest::Approx(1.0 / 15.0).epsilon(1e-10));
  }

  TEST_CASE("disconnected graph reports its components") {
    IncompletePCM pcm({"A", "B", "C", "D"});
    pcm.set_pair(0, 1, 2.0);
    pcm.set_pair(2, 3, 3.0);
    try {
      llsm_weights(pcm);
      FAIL("expected DisconnectedError");
    } catch (const DisconnectedError& e) {
      REQUIRE(e.components().size() == 2);
      CHECK(e.components()[0] == std::vector<std::string>{"A", "B"});
      CHECK(e.components()[1] == std::vector<std::string>{"C", "D"});
    }
  }

  TEST_CASE("degenerate sizes") {
    CHECK_THROWS_AS(llsm_weights(IncompletePCM{}), Error);
    WeightVector w = llsm_weights(IncompletePCM({"solo"}));
    CHECK(w.weights == std::vector<double>{1.0});
  }

  TEST_CASE("gauge choice does not change the weights") {
    std::mt19937 rng(7);
    const double scale[] = {1.0 / 3.0, 0.5, 1.0, 2.0, 3.0};
    for (int trial = 0; trial < 20; ++trial) {
      IncompletePCM pcm = testutil::random_connected_incomplete(rng, 5, scale);
      WeightVector a = llsm_weights(pcm, 0);
      WeightVector b = llsm_weights(pcm, 1);
      for (int i = 0; i < 5; ++i) {
        CHECK(a.weights[i] == doctest::Approx(b.weights[i]).epsilon(1e-10));
      }
    }
  }
}

TEST_SUITE("perron_vector") {
  TEST_CASE("consistent matrix: lambda equals n, weights recovered") {
    EigenResult result = perron_vector(consistent_3x3());
    CHECK(result.lambda_max == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(result.vector.weights[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(result.vector.weights[1] == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(result.vector.weights[2] == doctest::Approx(0.25).epsilon(1e-10));
  }

  TEST_CASE("any 2x2 matrix is consistent") {
    IncompletePCM pcm({"A", "B"});
    pcm.set_pair(0, 1, 7.0);
    EigenResult result = perron_vector(pcm);
    CHECK(result.lambda_max == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(result.vector.weights[0] == doctest::Approx(7.0 / 8.0).epsilon(1e-10));
  }

  TEST_CASE("inconsistent 3x3 against the characteristic-polynomial value") {
    IncompletePCM pcm({"A", "B", "C"});
    pcm.set_pair(0, 1, 2.0);
    pcm.set_pair(0, 2, 2.0);
    pcm.set_pair(1, 2, 2.0);
    EigenResult result = perron_vector(pcm);
    CHECK(result.lambda_max ==
          doctest::Approx(3.0536215758789726).epsilon(1e-9));
    // second route: repeated-squaring oracle
    CHECK(result.lambda_max ==
          doctest::Approx(testutil::lambda_max_by_squaring(testutil::to_grid(pcm)))
              .epsilon(1e-10));
  }

  TEST_CASE("incomplete input is rejected") {
    IncompletePCM pcm({"A", "B", "C"});
    pcm.set_pair(0, 1, 2.0);
    CHECK_THROWS_AS(perron_vector(pcm), Error);
  }

  TEST_CASE("iteration budget exhausted") {
    IncompletePCM pcm({"A", "B", "C"});
    pcm.set_pair(0, 1, 2.0);
    pcm.set_pair(0, 2, 2.0);
    pcm.set_pair(1, 2, 2.0);
    PowerOptions options;
    options.max_iter = 1;
    try {
      perron_vector(pcm, options);
      FAIL("expected NoConvergenceError");
    } catch (const NoConvergenceError& e) {
      CHECK(e.iterations() == 1);
      CHECK(std::isfinite(e.best_lambda_max()));
    }
  }
}

TEST_SUITE("em_complete") {
  TEST_CASE("complete consistent input returned unchanged") {
    CompletionResult result = em_complete(consistent_3x3());
    CHECK(result.variables.empty());
    CHECK(result.iterations == 0);
    CHECK(result.lambda_max == doctest::Approx(3.0).epsilon(1e-10));
  }

  TEST_CASE("one missing entry completed consistently") {
    IncompletePCM pcm({"A", "B", "C"});
    pcm.set_pair(0, 1, 2.0);
    pcm.set_pair(1, 2, 3.0);
    CompletionResult result = em_complete(pcm);
    REQUIRE(result.variables.size() == 1);
    CHECK(result.variables[0] == doctest::Approx(6.0).epsilon(1e-6));
    CHECK(result.lambda_max == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(result.completed.at(0, 2) == result.variables[0]);
    result.completed.validate();
  }

  TEST_CASE("4-cycle with two unknowns matches the grid-search oracle") {
    IncompletePCM pcm({"A", "B", "C", "D"});
    pcm.set_pair(0, 1, 2.0);
    pcm.set_pair(1, 2, 2.0);
    pcm.set_pair(2, 3, 2.0);
    pcm.set_pair(0, 3, 1.0);
    CompletionResult result = em_complete(pcm);
    // frozen from an independent dense grid refinement over (t1, t2)
    CHECK(result.lambda_max == doctest::Approx(4.276396388008774).epsilon(1e-7));
    CHECK(result.variables[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));
    CHECK(result.variables[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));
    CHECK(result.lambda_max >= 4.0);
    // local optimality at +-1% per variable, lambda measured by the oracle
    auto grid = testutil::to_grid(result.completed);
    for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 2}, {1, 3}}) {
      for (double factor : {1.01, 0.99}) {
        auto perturbed = grid;
        perturbed[i][j] *= factor;
        perturbed[j][i] = 1.0 / perturbed[i][j];
        CHECK(testutil::lambda_max_by_squaring(perturbed) >=
              result.lambda_max - 1e-9);
      }
    }
  }

  TEST_CASE("disconnected input fails") {
    IncompletePCM pcm({"A", "B", "C"});
    pcm.set_pair(0, 1, 2.0);
    CHECK_THROWS_AS(em_complete(pcm), DisconnectedError);
  }

  TEST_CASE("cycle budget exhausted") {
    IncompletePCM pcm({"A", "B", "C", "D"});
    pcm.set_pair(0, 1, 3.0);
    pcm.set_pair(1, 2, 1.0 / 3.0);
    pcm.set_pair(2, 3, 2.0);
    pcm.set_pair(0, 3, 2.0);
    CompletionOptions options;
    options.max_cycles = 1;
    options.tol = 1e-16;  // unreachable in one cycle
    try {
      em_complete(pcm, options);
      FAIL("expected NoConvergenceError");
    } catch (const NoConvergenceError& e) {
      CHECK(e.best_lambda_max() >= 4.0 - 1e-8);
    }
  }
}

TEST_SUITE("em_weights") {
  TEST_CASE("complete consistent matrix recovered") {
    WeightVector w = em_weights(consistent_3x3());
    CHECK(w.weights[0] == doctest::Approx(0.5).epsilon(1e-10));
  }

  TEST_CASE("consistent completion forces the ratios") {
    IncompletePCM pcm({"A", "B", "C"});
    pcm.set_pair(0, 1, 2.0);
    pcm.set_pair(1, 2, 3.0);
    WeightVector w = em_weights(pcm);
    CHECK(w.weights[0] == doctest::Approx(0.6).epsilon(1e-7));
    CHECK(w.weights[1] == doctest::Approx(0.3).epsilon(1e-7));
    CHECK(w.weights[2] == doctest::Approx(0.1).epsilon(1e-7));
  }
}

TEST_SUITE("consistency_index") {
  TEST_CASE("consistent matrix scores zero") {
    CHECK(consistency_index(3.0, 3) == 0.0);
  }

  TEST_CASE("known 3x3 value") {
    CHECK(consistency_index(3.0536215758789726, 3) ==
          doctest::Approx(0.0268).epsilon(1e-2));
    CHECK(consistency_index(3.0536215758789726, 3) ==
          doctest::Approx(0.026810787939486325).epsilon(1e-12));
  }

  TEST_CASE("direct formula") {
    CHECK(consistency_index(4.2, 4) ==
          doctest::Approx(0.2 / 3.0).epsilon(1e-12));
  }

  TEST_CASE("rounding noise clamps to zero") {
    CHECK(consistency_index(3.0 - 1e-12, 3) == 0.0);
  }

  TEST_CASE("undefined cases") {
    CHECK_THROWS_AS(consistency_index(1.0, 1), Error);
    CHECK_THROWS_AS(consistency_index(2.0, 3), Error);
  }
}
