#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "steklov/critical_length.hpp"
#include "steklov/errors.hpp"
#include "steklov/extension_process.hpp"

using namespace steklov;

TEST_SUITE("critical-length") {

TEST_CASE("diagnosis sequence n=5") {
  const std::vector<EigenIndex> expected = {2,    12,   40,   100,  210,  392,  672, 1080,
                                            1650, 2420, 3432, 4732, 6370, 8400, 10880};
  CHECK(diagnosis_sequence(Dimension(5), 15) == expected);
  CHECK(diagnosis_eigenvalue(Dimension(5), 14) == 8400);
}

TEST_CASE("diagnosis closed forms") {
  const auto d3 = diagnosis_sequence(Dimension(3), 300);
  const auto d4 = diagnosis_sequence(Dimension(4), 300);
  std::int64_t squares = 0;
  for (std::int64_t i = 1; i <= 300; ++i) {
    CHECK(d3[static_cast<std::size_t>(i - 1)] == 2 * i * i);
    squares += i * i;
    CHECK(d4[static_cast<std::size_t>(i - 1)] == 2 * squares);
  }
  for (int n = 3; n <= 9; ++n) CHECK(diagnosis_sequence(Dimension(n), 1) == std::vector<EigenIndex>{2});
  CHECK_THROWS_AS((void)diagnosis_sequence(Dimension(3), 0), DomainError);
}

TEST_CASE("ladder order and cumulative multiplicities") {
  const auto ladder = asymptotic_ladder(Dimension(5), 9);
  const char* names[] = {"D0", "N1", "D1", "N2", "D2", "N3", "D3", "N4", "D4"};
  const double limits[] = {3, 4, 4, 5, 5, 6, 6, 7, 7};
  const std::int64_t cumulative[] = {1, 6, 11, 25, 39, 69, 99, 154, 209};
  REQUIRE(ladder.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(family_tag(ladder[i].family) == names[i][0]);
    CHECK(ladder[i].harmonic_index == names[i][1] - '0');
    CHECK(ladder[i].limit_value == limits[i]);
    CHECK(ladder[i].cumulative_multiplicity == cumulative[i]);
  }
}

TEST_CASE("asymptotic limit") {
  const auto a = asymptotic_limit(Dimension(5), 127);
  CHECK(a.value == 7.0);
  CHECK(a.rung.family == Family::Neumann);
  CHECK(a.rung.harmonic_index == 4);
  const auto b = asymptotic_limit(Dimension(3), 1);
  CHECK(b.value == 1.0);
  CHECK(b.rung.family == Family::Dirichlet);
  const auto c = asymptotic_limit(Dimension(3), 2);
  CHECK(c.value == 2.0);
  CHECK(c.rung.family == Family::Neumann);
  CHECK(c.rung.harmonic_index == 1);
  for (double length : {1e3, 1e4}) {
    CHECK(std::fabs(sharp_bound(Dimension(5), 127, AnnulusGeometry::from_length(length)).bound - 7.0) < 1e-3);
  }
}

TEST_CASE("ladder matches the sorted candidates at large L") {
  for (int n = 3; n <= 6; ++n) {
    const auto ladder = asymptotic_ladder(Dimension(n), 10);
    // k large enough that l0 + 1 >= 5 so all ten rungs are candidates
    const auto candidates = build_candidate_set(Dimension(n), 5000, AnnulusGeometry::from_length(1e3));
    REQUIRE(candidates.size() >= ladder.size());
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      CHECK(candidates[i].family == ladder[i].family);
      CHECK(candidates[i].harmonic_index == ladder[i].harmonic_index);
    }
  }
}

TEST_CASE("classification landmarks") {
  const auto one = classify(Dimension(3), 1);
  CHECK(one.verdict == Verdict::FiniteCriticalLength);
  REQUIRE(one.witness_length.has_value());
  CHECK(*one.witness_length == doctest::Approx(3.0177).epsilon(1e-3));

  const auto two = classify(Dimension(3), 2);
  CHECK(two.verdict == Verdict::NoFiniteFoundUpToHorizon);
  CHECK_FALSE(two.witness_length.has_value());
  CHECK(std::fabs(two.supremum_estimate - two.asymptotic_limit) < 1e-6);
  CHECK(two.asymptotic_limit == 2.0);

  CHECK(classify(Dimension(3), 18).verdict == Verdict::FiniteCriticalLength);
  CHECK(classify(Dimension(4), 408).verdict == Verdict::FiniteCriticalLength);
}

TEST_CASE("witnesses are not stale") {
  const ScanConfig config;
  for (int n = 3; n <= 5; ++n) {
    for (EigenIndex k = 1; k <= 120; k += 7) {
      const auto r = classify(Dimension(n), k, config);
      CHECK(r.supremum_estimate >= r.asymptotic_limit);
      CHECK(r.supremum_estimate < static_cast<double>(k + n - 2));
      if (r.verdict == Verdict::FiniteCriticalLength) {
        REQUIRE(r.witness_length.has_value());
        const double again = sharp_bound(Dimension(n), k, AnnulusGeometry::from_length(*r.witness_length)).bound;
        CHECK(again > r.asymptotic_limit * (1.0 + config.tolerance));
        CHECK(again == r.supremum_estimate);
      }
    }
  }
}

TEST_CASE("global bound estimate") {
  CHECK(global_bound_estimate(Dimension(3), 2) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(global_bound_estimate(Dimension(5), 127) >= 7.0);
  CHECK(global_bound_estimate(Dimension(5), 127) < 130.0);
}

TEST_CASE("scan config validation") {
  ScanConfig bad;
  bad.l_min = 10.0;
  bad.l_max = 1.0;
  CHECK_THROWS_AS(bad.validate(), InvalidConfig);
  bad = {};
  bad.grid_points = 1;
  CHECK_THROWS_AS(bad.validate(), InvalidConfig);
  bad = {};
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidConfig);
  CHECK_THROWS_AS((void)classify(Dimension(3), 1, bad), InvalidConfig);
}

TEST_CASE("sweep entries and cover ranges") {
  const auto report = sweep(Dimension(3), 1, 4);
  REQUIRE(report.entries.size() == 4);
  CHECK(report.dimension == 3);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& e = report.entries[i];
    const int idx = static_cast<int>(i) + 1;
    CHECK(e.diagnosis_index == idx);
    CHECK(e.k == 2 * idx * idx);
    CHECK(e.cover_end == e.k + 2 * (2 * idx + 1) - 1);
  }
  CHECK(report.entries[0].report.verdict == Verdict::NoFiniteFoundUpToHorizon);
  CHECK(report.entries[1].report.verdict == Verdict::NoFiniteFoundUpToHorizon);
  CHECK(report.entries[2].report.verdict == Verdict::FiniteCriticalLength);
  CHECK(report.entries[2].k == 18);
  CHECK(sweep(Dimension(5), 14, 14).entries.at(0).k == 8400);
  CHECK_THROWS_AS((void)sweep(Dimension(3), 5, 3), InvalidConfig);
  CHECK_THROWS_AS((void)sweep(Dimension(3), 0, 3), InvalidConfig);
}

TEST_CASE("sweep every index covers each block") {
  const auto plan = sweep_plan(Dimension(3), 1, 2, SweepMode::EveryIndex);
  REQUIRE(plan.size() == 16);  // k = 2..17
  for (std::size_t j = 0; j < plan.size(); ++j) {
    CHECK(plan[j].k == static_cast<EigenIndex>(j) + 2);
    CHECK(plan[j].diagnosis_index == (plan[j].k < 8 ? 1 : 2));
  }
}

TEST_CASE("sweep is independent of worker count") {
  ScanConfig one;
  one.workers = 1;
  ScanConfig four;
  four.workers = 4;
  const auto a = sweep(Dimension(4), 1, 12, one);
  const auto b = sweep(Dimension(4), 1, 12, four);
  const auto c = sweep_serial(Dimension(4), 1, 12, one);
  CHECK(a == b);
  CHECK(a == c);
}

}  // TEST_SUITE
