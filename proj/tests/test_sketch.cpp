#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rpt/quadratic.hpp"
#include "rpt/random_instances.hpp"
#include "rpt/sketch.hpp"

using namespace rpt;

TEST_CASE("pt sketch distribution validation") {
  const BlockPartition part({1, 1});
  REQUIRE_THROWS_AS(PTSketchDistribution(part, {0, 1}, {0.9, 0.5}), ValidationError);  // p1 != 1
  REQUIRE_THROWS_AS(PTSketchDistribution(part, {0, 1}, {1.0, 1.5}), ValidationError);  // not monotone
  REQUIRE_THROWS_AS(PTSketchDistribution(part, {0, 1}, {1.0, 0.0}), ValidationError);  // p_B = 0
  REQUIRE_THROWS_AS(PTSketchDistribution(part, {0, 0}, {1.0, 0.5}), ValidationError);  // not a permutation
  REQUIRE_THROWS_AS(PTSketchDistribution(part, {0, 2}, {1.0, 0.5}), ValidationError);
  REQUIRE_NOTHROW(PTSketchDistribution(part, {1, 0}, {1.0, 0.5}));
  // ties in p are legal: they make the in-between outcome unreachable
  REQUIRE_NOTHROW(PTSketchDistribution(BlockPartition({1, 1, 1}), {0, 1, 2}, {1.0, 1.0, 0.25}));
}

TEST_CASE("outcome structure and sampling probabilities") {
  SECTION("two blocks, p = (1, 1/2), identity labels") {
    const BlockPartition part({1, 1});
    const PTSketchDistribution dist(part, {0, 1}, {1.0, 0.5});
    REQUIRE(dist.outcome_probabilities() == std::vector<double>{0.5, 0.5});

    const SketchOutcome& first = dist.outcome(0);
    REQUIRE(first.active_slots == std::vector<std::size_t>{0});
    REQUIRE(first.slot_scales == std::vector<double>{1.0});
    REQUIRE(first.dense_scaling(part) == std::vector<double>{1.0, 0.0});

    const SketchOutcome& second = dist.outcome(1);
    REQUIRE(second.active_slots == std::vector<std::size_t>{0, 1});
    REQUIRE(second.dense_scaling(part) == std::vector<double>{1.0, 2.0});
  }

  SECTION("all-ones probabilities always draw the full outcome") {
    const BlockPartition part({2, 3, 1});
    const PTSketchDistribution dist = PTSketchDistribution::full_support(part);
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
      const SketchOutcome& o = dist.sample(rng);
      REQUIRE(o.index == 2);
      REQUIRE(o.active_slots.size() == 3);
      REQUIRE(o.slot_scales == std::vector<double>(3, 1.0));
    }
  }

  SECTION("successive differences of p give q") {
    const PTSketchDistribution dist(BlockPartition({1, 1, 1}), {0, 1, 2}, {1.0, 0.6, 0.2});
    const auto& q = dist.outcome_probabilities();
    REQUIRE(q[0] == Catch::Approx(0.4).epsilon(1e-15));
    REQUIRE(q[1] == Catch::Approx(0.4).epsilon(1e-15));
    REQUIRE(q[2] == Catch::Approx(0.2).epsilon(1e-15));
  }

  SECTION("sampling is deterministic for a fixed seed") {
    const PTSketchDistribution dist(BlockPartition({1, 2}), {0, 1}, {1.0, 0.3});
    std::vector<std::size_t> a, b;
    {
      Rng rng(77);
      for (int i = 0; i < 50; ++i) a.push_back(dist.sample(rng).index);
    }
    {
      Rng rng(77);
      for (int i = 0; i < 50; ++i) b.push_back(dist.sample(rng).index);
    }
    REQUIRE(a == b);
  }
}

TEST_CASE("empirical outcome frequencies match q within four sigma") {
  const PTSketchDistribution dist(BlockPartition({2, 1, 3}), {1, 0, 2}, {1.0, 0.55, 0.15});
  const std::size_t draws = 100000;
  std::vector<std::size_t> counts(3, 0);
  Rng rng(2024);
  for (std::size_t i = 0; i < draws; ++i) ++counts[dist.sample(rng).index];
  for (std::size_t i = 0; i < 3; ++i) {
    const double q = dist.outcome_probabilities()[i];
    const double freq = static_cast<double>(counts[i]) / static_cast<double>(draws);
    const double sigma = std::sqrt(q * (1.0 - q) / static_cast<double>(draws));
    REQUIRE(std::abs(freq - q) <= 4.0 * sigma);
  }
}

TEST_CASE("zero-probability outcomes are never drawn") {
  const PTSketchDistribution dist(BlockPartition({1, 1, 1}), {0, 1, 2}, {1.0, 1.0, 0.25});
  REQUIRE(dist.outcome_probabilities()[0] == 0.0);
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) REQUIRE(dist.sample(rng).index != 0);
}

TEST_CASE("probability matrix") {
  SECTION("sizes (1,2) with p = (1, 1/2)") {
    const PTSketchDistribution dist(BlockPartition({1, 2}), {0, 1}, {1.0, 0.5});
    REQUIRE(dist.probability_matrix().data() == std::vector<double>{1.0, 0.5, 0.5});
  }
  SECTION("all ones is the identity") {
    const auto p = PTSketchDistribution::full_support(BlockPartition({2, 2})).probability_matrix();
    REQUIRE(p.data() == std::vector<double>(4, 1.0));
  }
  SECTION("labels follow the permutation") {
    // slot 0 carries label 2 (p = 1/4), slot 1 carries label 1 (p = 1)
    const PTSketchDistribution dist(BlockPartition({1, 1}), {1, 0}, {1.0, 0.25});
    REQUIRE(dist.probability_matrix().data() == std::vector<double>{0.25, 1.0});
  }
}

TEST_CASE("compute_L_P") {
  SECTION("identity P returns lambda_max exactly") {
    Rng rng(3);
    const SymMatrix l = random_psd(6, rng, 0.5, 4.0);
    REQUIRE(compute_L_P(l, SymMatrix::identity(6)) == lambda_max(l));
  }

  SECTION("diagonal arithmetic example") {
    const SymMatrix l = SymMatrix::diagonal({4.0, 1.0});
    const SymMatrix p = SymMatrix::diagonal({1.0, 0.25});
    REQUIRE(compute_L_P(l, p) == Catch::Approx(4.0).epsilon(1e-12));
  }

  SECTION("bracketed by the key-quantity sandwich") {
    Rng rng(19);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t dim = 2 + rng.index(12);
      const BlockPartition part = random_partition(dim, 4, rng);
      const SymMatrix l = random_psd(dim, rng, 0.2, 5.0);
      const PTSketchDistribution dist = random_pt_distribution(part, rng);
      const SymMatrix p = dist.probability_matrix();
      const double l_p = compute_L_P(l, p);
      const double lower = oracle::lambda_max(dist.expected_clc(l));
      double p_min = 1.0;
      for (double v : p.data()) p_min = std::min(p_min, v);
      const double upper = oracle::lambda_max(l) / p_min;
      REQUIRE(lower <= l_p + 1e-8);
      REQUIRE(l_p <= upper + 1e-8);
    }
  }

  SECTION("nonpositive P entries are rejected") {
    REQUIRE_THROWS_AS(compute_L_P(SymMatrix::identity(2), SymMatrix::diagonal({1.0, 0.0})),
                      ValidationError);
  }
}

TEST_CASE("expected_sketch enumerates to the identity") {
  SECTION("two blocks, p = (1, 1/2)") {
    const PTSketchDistribution dist(BlockPartition({1, 1}), {0, 1}, {1.0, 0.5});
    const auto e = dist.expected_sketch().data();
    REQUIRE(e[0] == Catch::Approx(1.0).margin(1e-15));
    REQUIRE(e[1] == Catch::Approx(1.0).margin(1e-15));  // 0 * 1/2 + 2 * 1/2
  }

  SECTION("one hundred random distributions, tolerance 1e-12") {
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
      const BlockPartition part = random_partition(2 + rng.index(14), 5, rng);
      const PTSketchDistribution dist = random_pt_distribution(part, rng);
      for (double v : dist.expected_sketch().data())
        REQUIRE(std::abs(v - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("expected_clc") {
  SECTION("p identically one reproduces L") {
    Rng rng(4);
    const SymMatrix l = random_psd(5, rng, 0.5, 3.0);
    const auto clc = PTSketchDistribution::full_support(BlockPartition({2, 3})).expected_clc(l);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        REQUIRE(clc(i, j) == Catch::Approx(l(i, j)).margin(1e-15));
  }

  SECTION("two scalar blocks with diagonal L") {
    const SymMatrix l = SymMatrix::diagonal({3.0, 5.0});
    const PTSketchDistribution dist(BlockPartition({1, 1}), {0, 1}, {1.0, 0.4});
    const auto clc = dist.expected_clc(l);
    REQUIRE(clc(0, 0) == Catch::Approx(3.0).epsilon(1e-12));
    REQUIRE(clc(1, 1) == Catch::Approx(5.0 / 0.4).epsilon(1e-12));
  }

  SECTION("lambda_max(E[CLC]) never exceeds L_P") {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t dim = 2 + rng.index(10);
      const BlockPartition part = random_partition(dim, 4, rng);
      const SymMatrix l = random_psd(dim, rng, 0.1, 6.0);
      const PTSketchDistribution dist = random_pt_distribution(part, rng);
      REQUIRE(lambda_max(dist.expected_clc(l)) <=
              compute_L_P(l, dist.probability_matrix()) + 1e-8);
    }
  }

  SECTION("dimension mismatch") {
    const PTSketchDistribution dist(BlockPartition({1, 1}), {0, 1}, {1.0, 0.5});
    REQUIRE_THROWS_AS(dist.expected_clc(SymMatrix::identity(3)), ValidationError);
  }
}

TEST_CASE("apply_sketch") {
  const Problem p = make_quadratic(SymMatrix::diagonal({4.0, 1.0, 2.0}), BlockPartition({1, 2}));

  SECTION("full support with unit scales equals the gradient exactly") {
    const PTSketchDistribution dist = PTSketchDistribution::full_support(p.partition);
    const std::vector<double> x{1.0, -2.0, 0.5};
    REQUIRE(apply_sketch(dist.outcome(1), p, x) == p.gradient(x));
  }

  SECTION("zero gradient stays zero") {
    const PTSketchDistribution dist(p.partition, {0, 1}, {1.0, 0.5});
    const std::vector<double> x(3, 0.0);
    REQUIRE(apply_sketch(dist.outcome(1), p, x) == std::vector<double>(3, 0.0));
  }

  SECTION("partial outcome matches the dense sketch-matrix oracle") {
    const PTSketchDistribution dist(p.partition, {0, 1}, {1.0, 0.5});
    const std::vector<double> x{1.5, -1.0, 2.0};
    for (std::size_t i = 0; i < 2; ++i) {
      const SketchOutcome& o = dist.outcome(i);
      const auto ours = apply_sketch(o, p, x);
      const auto scaling = o.dense_scaling(p.partition);
      const auto full = p.gradient(x);
      for (std::size_t j = 0; j < 3; ++j) REQUIRE(ours[j] == scaling[j] * full[j]);
    }
  }
}

TEST_CASE("second-moment identity by exact enumeration") {
  // E||C grad f||^2 equals ||grad f||^2 weighted by 1/p, and is bounded by
  // 2 L_P (f - f*) on problems with a known optimum
  Rng rng(33);
  for (int instance = 0; instance < 10; ++instance) {
    const std::size_t dim = 4 + rng.index(10);
    const BlockPartition part = random_partition(dim, 4, rng);
    const Problem prob =
        make_quadratic(SymMatrix::diagonal(random_vector(dim, rng, 0.3, 5.0)), part);
    const PTSketchDistribution dist = random_pt_distribution(part, rng);
    const auto p_diag = dist.probability_matrix().data();
    const double l_p = compute_L_P(prob.smoothness, dist);
    for (int trial = 0; trial < 100; ++trial) {
      const auto x = random_vector(dim, rng, -2.0, 2.0);
      double enumerated = 0.0;
      for (std::size_t i = 0; i < dist.num_blocks(); ++i)
        enumerated +=
            dist.outcome_probabilities()[i] * norm_sq(apply_sketch(dist.outcome(i), prob, x));
      const auto g = prob.gradient(x);
      double weighted = 0.0;
      for (std::size_t j = 0; j < dim; ++j) weighted += g[j] * g[j] / p_diag[j];
      REQUIRE(std::abs(enumerated - weighted) <= 1e-10 * std::max(1.0, std::abs(weighted)));
      REQUIRE(enumerated <= 2.0 * l_p * (prob.value(x) - *prob.min_value) + 1e-9);
    }
  }
}

TEST_CASE("P-inverse norm bound from generalized smoothness") {
  // with W = P^{-1}: ||grad f(x)||^2_{P^{-1}} <= 2 L_P (f(x) - f*)
  Rng rng(55);
  const BlockPartition part({2, 3, 3});
  const Problem prob =
      make_quadratic(SymMatrix::diagonal(random_vector(8, rng, 0.5, 6.0)), part);
  for (int trial = 0; trial < 200; ++trial) {
    const PTSketchDistribution dist = random_pt_distribution(part, rng);
    const auto p_diag = dist.probability_matrix().data();
    const double l_p = compute_L_P(prob.smoothness, dist);
    const auto x = random_vector(8, rng, -3.0, 3.0);
    const auto g = prob.gradient(x);
    double weighted = 0.0;
    for (std::size_t j = 0; j < 8; ++j) weighted += g[j] * g[j] / p_diag[j];
    REQUIRE(weighted <= 2.0 * l_p * (prob.value(x) - *prob.min_value) + 1e-9);
  }
}
