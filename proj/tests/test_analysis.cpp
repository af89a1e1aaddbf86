#include "pcmrank/analysis.hpp"

#include <cmath>

#include "doctest.h"

using namespace pcmrank;

namespace {

Ranking make_ranking(std::vector<std::string> labels, std::vector<double> ranks) {
  return Ranking{std::move(labels), std::move(ranks)};
}

}  // namespace

TEST_SUITE("ranking_from_weights") {
  TEST_CASE("descending weights get ranks 1..n") {
    Ranking r = ranking_from_weights({{0.5, 0.3, 0.2}}, {"A", "B", "C"});
    CHECK(r.ranks == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(r.order() == std::vector<std::string>{"A", "B", "C"});
  }

  TEST_CASE("exact ties share the average rank") {
    Ranking r = ranking_from_weights({{0.4, 0.4, 0.2}}, {"A", "B", "C"});
    CHECK(r.ranks == std::vector<double>{1.5, 1.5, 3.0});
  }

  TEST_CASE("ranks follow weights, not input order") {
    Ranking r = ranking_from_weights({{0.2, 0.5, 0.3}}, {"A", "B", "C"});
    CHECK(r.ranks == std::vector<double>{3.0, 1.0, 2.0});
    CHECK(r.rank_of("B") == 1.0);
  }

  TEST_CASE("length mismatch is a shape error") {
    CHECK_THROWS_AS(ranking_from_weights({{0.5, 0.5}}, {"A"}), Error);
  }
}

TEST_SUITE("win_loss_ranking") {
  TEST_CASE("simple two-player case") {
    std::vector<HeadToHead> records = {{"A", "B", 3, 1}};
    Ranking r = win_loss_ranking(records, {"A", "B"});
    CHECK(r.rank_of("A") == 1.0);
    CHECK(r.rank_of("B") == 2.0);
  }

  TEST_CASE("undefeated beats any finite ratio") {
    // A: 2 wins 0 losses; B: 12 wins 7 losses; C: 5 wins 12 losses
    std::vector<HeadToHead> records = {{"A", "B", 2, 0}, {"B", "C", 10, 5}};
    Ranking r = win_loss_ranking(records, {"A", "B", "C"});
    CHECK(r.rank_of("A") == 1.0);
    CHECK(r.rank_of("B") == 2.0);
    CHECK(r.rank_of("C") == 3.0);
  }

  TEST_CASE("undefeated players ordered by win count") {
    std::vector<HeadToHead> records = {
        {"A", "C", 2, 0}, {"B", "C", 5, 0}, {"C", "D", 9, 1}};
    Ranking r = win_loss_ranking(records, {"A", "B", "C", "D"});
    CHECK(r.rank_of("B") == 1.0);  // 5-0 outranks 2-0
    CHECK(r.rank_of("A") == 2.0);
    CHECK(r.rank_of("C") == 3.0);
    CHECK(r.rank_of("D") == 4.0);
  }

  TEST_CASE("equal ratios share average ranks") {
    std::vector<HeadToHead> records = {{"A", "B", 1, 1}, {"C", "D", 2, 2}};
    Ranking r = win_loss_ranking(records, {"A", "B", "C", "D"});
    CHECK(r.ranks == std::vector<double>{2.5, 2.5, 2.5, 2.5});
  }

  TEST_CASE("player without matches") {
    std::vector<HeadToHead> records = {{"A", "B", 1, 1}};
    CHECK_THROWS_AS(win_loss_ranking(records, {"A", "B", "C"}), Error);
  }
}

TEST_SUITE("spearman") {
  TEST_CASE("identical rankings correlate fully") {
    Ranking r = make_ranking({"A", "B", "C"}, {1, 2, 3});
    CHECK(spearman(r, r) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("reversal gives minus one") {
    Ranking r1 = make_ranking({"A", "B", "C"}, {1, 2, 3});
    Ranking r2 = make_ranking({"A", "B", "C"}, {3, 2, 1});
    CHECK(spearman(r1, r2) == doctest::Approx(-1.0).epsilon(1e-12));
  }

  TEST_CASE("alignment is by label, not position") {
    Ranking r1 = make_ranking({"A", "B", "C"}, {1, 2, 3});
    Ranking r2 = make_ranking({"C", "A", "B"}, {3, 1, 2});
    CHECK(spearman(r1, r2) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("mismatched label sets") {
    Ranking r1 = make_ranking({"A", "B"}, {1, 2});
    Ranking r2 = make_ranking({"A", "X"}, {1, 2});
    CHECK_THROWS_AS(spearman(r1, r2), Error);
  }

  TEST_CASE("single item undefined") {
    Ranking r = make_ranking({"A"}, {1});
    CHECK_THROWS_AS(spearman(r, r), Error);
  }
}

TEST_SUITE("correlation_matrix") {
  TEST_CASE("identical rankings give all ones") {
    Ranking r = make_ranking({"A", "B", "C"}, {1, 2, 3});
    std::vector<Ranking> rankings = {r, r};
    auto m = correlation_matrix(rankings);
    CHECK(m[0][0] == 1.0);
    CHECK(m[0][1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m[1][0] == m[0][1]);
  }

  TEST_CASE("symmetry is exact for mixed rankings") {
    std::vector<Ranking> rankings = {
        make_ranking({"A", "B", "C", "D"}, {1, 2, 3, 4}),
        make_ranking({"A", "B", "C", "D"}, {2, 1, 4, 3}),
        make_ranking({"A", "B", "C", "D"}, {4, 3, 2, 1}),
    };
    auto m = correlation_matrix(rankings);
    for (size_t p = 0; p < 3; ++p) {
      CHECK(m[p][p] == 1.0);
      for (size_t q = 0; q < 3; ++q) CHECK(m[p][q] == m[q][p]);
    }
  }

  TEST_CASE("fewer than two rankings") {
    std::vector<Ranking> one = {make_ranking({"A", "B"}, {1, 2})};
    CHECK_THROWS_AS(correlation_matrix(one), Error);
  }
}

TEST_SUITE("density") {
  TEST_CASE("complete matrix has density one") {
    IncompletePCM pcm({"A", "B"});
    pcm.set_pair(0, 1, 2.0);
    CHECK(density(pcm) == 1.0);
  }

  TEST_CASE("diagonal-only 4x4") {
    IncompletePCM pcm({"A", "B", "C", "D"});
    CHECK(density(pcm) == 0.25);
  }

  TEST_CASE("empty matrix undefined") {
    CHECK_THROWS_AS(density(IncompletePCM{}), Error);
  }
}

TEST_SUITE("degree_distribution") {
  TEST_CASE("triangle graph, alphabetical within equal degree") {
    ComparisonGraph g{3, {{0, 1}, {0, 2}, {1, 2}}};
    auto d = degree_distribution(g, {"C", "A", "B"});
    REQUIRE(d.size() == 3);
    CHECK(d[0] == std::pair<std::string, int>{"A", 2});
    CHECK(d[1] == std::pair<std::string, int>{"B", 2});
    CHECK(d[2] == std::pair<std::string, int>{"C", 2});
  }

  TEST_CASE("hub first") {
    ComparisonGraph g{4, {{0, 1}, {0, 2}, {0, 3}}};
    auto d = degree_distribution(g, {"Hub", "A", "B", "C"});
    CHECK(d[0] == std::pair<std::string, int>{"Hub", 3});
    CHECK(d[3].second == 1);
  }
}

TEST_SUITE("intransitive_triads") {
  TEST_CASE("minimal cycle") {
    std::vector<HeadToHead> records = {
        {"A", "B", 2, 1}, {"B", "C", 2, 1}, {"C", "A", 2, 1}};
    TriadReport report = intransitive_triads(records, {"A", "B", "C"});
    REQUIRE(report.count() == 1);
    CHECK(report.triads[0] == std::array<int, 3>{0, 1, 2});
  }

  TEST_CASE("transitive triple has no cycle") {
    std::vector<HeadToHead> records = {
        {"A", "B", 2, 1}, {"B", "C", 2, 1}, {"A", "C", 2, 1}};
    CHECK(intransitive_triads(records, {"A", "B", "C"}).count() == 0);
  }

  TEST_CASE("ties break the cycle") {
    std::vector<HeadToHead> records = {
        {"A", "B", 2, 2}, {"B", "C", 2, 1}, {"C", "A", 2, 1}};
    CHECK(intransitive_triads(records, {"A", "B", "C"}).count() == 0);
  }

  TEST_CASE("reverse orientation detected") {
    std::vector<HeadToHead> records = {
        {"B", "A", 2, 1}, {"C", "B", 2, 1}, {"A", "C", 2, 1}};
    TriadReport report = intransitive_triads(records, {"A", "B", "C"});
    REQUIRE(report.count() == 1);
    // cycle runs A > C > B > A, listed from the smallest vertex
    CHECK(report.triads[0] == std::array<int, 3>{0, 2, 1});
  }
}

TEST_SUITE("restrict_ranking") {
  TEST_CASE("relative order and gaps compress") {
    Ranking r = make_ranking({"A", "B", "C", "D"}, {1, 3, 2, 4});
    Ranking induced = restrict_ranking(r, {"B", "D"});
    CHECK(induced.labels == std::vector<std::string>{"B", "D"});
    CHECK(induced.ranks == std::vector<double>{1.0, 2.0});
  }

  TEST_CASE("ties survive restriction") {
    Ranking r = make_ranking({"A", "B", "C"}, {1.5, 1.5, 3});
    Ranking induced = restrict_ranking(r, {"A", "B"});
    CHECK(induced.ranks == std::vector<double>{1.5, 1.5});
  }

  TEST_CASE("unknown label rejected") {
    Ranking r = make_ranking({"A", "B"}, {1, 2});
    CHECK_THROWS_AS(restrict_ranking(r, {"X"}), Error);
  }
}
