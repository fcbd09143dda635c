#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rpt/block_partition.hpp"
#include "rpt/cost_model.hpp"
#include "rpt/random_instances.hpp"
#include "rpt/smoothness.hpp"
#include "rpt/spectral.hpp"
#include "rpt/sym_matrix.hpp"

using namespace rpt;

TEST_CASE("block partition validates sizes and derives offsets") {
  const BlockPartition part({10, 50, 250});
  REQUIRE(part.num_blocks() == 3);
  REQUIRE(part.total_dim() == 310);
  REQUIRE(part.offsets() == std::vector<std::size_t>{0, 10, 60});
  REQUIRE(part.offset(2) + part.size(2) == part.total_dim());

  REQUIRE_THROWS_AS(BlockPartition({3, 0, 2}), ValidationError);
  REQUIRE_THROWS_AS(BlockPartition(std::vector<std::size_t>{}), ValidationError);

  const BlockPartition eq = BlockPartition::equal_blocks(8, 3);
  REQUIRE(eq.sizes() == std::vector<std::size_t>{3, 3, 2});
}

TEST_CASE("normalize_costs preserves proportions and sums to one") {
  const CostModel sizes = normalize_costs({10.0, 500.0, 25000.0});
  REQUIRE(sizes.cost(0) == Catch::Approx(10.0 / 25510.0).epsilon(1e-14));
  REQUIRE(sizes.cost(1) == Catch::Approx(500.0 / 25510.0).epsilon(1e-14));
  REQUIRE(sizes.cost(2) == Catch::Approx(25000.0 / 25510.0).epsilon(1e-14));

  REQUIRE(normalize_costs({1.0}).costs() == std::vector<double>{1.0});

  const CostModel thirds = normalize_costs({2.0, 2.0, 4.0});
  REQUIRE(thirds.costs() == std::vector<double>{0.25, 0.25, 0.5});

  REQUIRE_THROWS_AS(normalize_costs({1.0, 0.0}), ValidationError);
  REQUIRE_THROWS_AS(normalize_costs({1.0, -2.0}), ValidationError);

  SECTION("sum within 1e-12 and idempotent") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const auto raw = random_vector(1 + rng.index(8), rng, 1e-6, 1e3);
      const CostModel once = normalize_costs(raw);
      double total = 0.0;
      for (double c : once.costs()) total += c;
      REQUIRE(std::abs(total - 1.0) <= 1e-12);
      const CostModel twice = normalize_costs(once.costs());
      for (std::size_t i = 0; i < raw.size(); ++i)
        REQUIRE(std::abs(twice.cost(i) - once.cost(i)) <= 1e-15 * std::max(1.0, once.cost(i)));
    }
  }
}

TEST_CASE("sym matrix validates symmetry and dimensions") {
  REQUIRE_THROWS_AS(SymMatrix::dense(2, {1.0, 2.0, 3.0, 4.0}), ValidationError);
  REQUIRE_NOTHROW(SymMatrix::dense(2, {1.0, 2.0, 2.0, 4.0}));
  REQUIRE_THROWS_AS(SymMatrix::dense(2, {1.0, 2.0, 2.0}), ValidationError);
  REQUIRE_THROWS_AS(SymMatrix::diagonal({}), ValidationError);

  const SymMatrix m = SymMatrix::dense(2, {2.0, 1.0, 1.0, 3.0});
  REQUIRE(m.apply({1.0, 1.0}) == std::vector<double>{3.0, 4.0});
  REQUIRE(m.quad_form({1.0, 2.0}) == Catch::Approx(2.0 + 4.0 + 12.0));

  const SymMatrix d = SymMatrix::diagonal({5.0, 7.0});
  REQUIRE(d(0, 1) == 0.0);
  REQUIRE(d(1, 1) == 7.0);
  REQUIRE(d.principal_block(1, 1).data() == std::vector<double>{7.0});
}

TEST_CASE("lambda_max on diagonal and identity matrices") {
  REQUIRE(lambda_max(SymMatrix::diagonal({272.0, 53.3, 11.0})) == 272.0);
  REQUIRE(lambda_max(SymMatrix::identity(7)) == 1.0);
  REQUIRE(lambda_max(SymMatrix::identity(1)) == 1.0);
}

TEST_CASE("lambda_max matches the dense eigensolver oracle") {
  // random 8x8 PSD with a known spectrum
  Rng rng(11);
  std::vector<double> eigs{0.3, 1.1, 2.0, 2.5, 3.3, 4.8, 6.1, 9.25};
  const SymMatrix m = random_psd_with_spectrum(eigs, rng);
  REQUIRE(lambda_max(m) == Catch::Approx(9.25).epsilon(1e-9));
  REQUIRE(lambda_max(m) == Catch::Approx(oracle::lambda_max(m)).epsilon(1e-9));

  SECTION("dimensions up to 200, both direct and power-iteration paths") {
    for (const std::size_t dim : {1u, 2u, 3u, 5u, 9u, 17u, 33u, 64u, 65u, 100u, 200u}) {
      auto spectrum = random_vector(dim, rng, 0.5, 8.0);
      spectrum[rng.index(dim)] = 10.0;  // separated top keeps power iteration in budget
      const SymMatrix psd = random_psd_with_spectrum(spectrum, rng);
      const double ours = lambda_max(psd);
      const double ref = oracle::lambda_max(psd);
      REQUIRE(ours == Catch::Approx(ref).epsilon(1e-8));
      REQUIRE(ours == Catch::Approx(10.0).epsilon(1e-8));
    }
  }

  SECTION("lambda_min agrees too") {
    for (const std::size_t dim : {2u, 10u, 40u, 80u}) {
      auto spectrum = random_vector(dim, rng, 1.0, 8.0);
      spectrum[0] = 0.25;
      spectrum[1 % dim] = 10.0;
      const SymMatrix psd = random_psd_with_spectrum(spectrum, rng);
      REQUIRE(lambda_min(psd) == Catch::Approx(oracle::lambda_min(psd)).margin(1e-7));
    }
  }

  SECTION("zero matrix") {
    REQUIRE(lambda_max(SymMatrix::dense(3, std::vector<double>(9, 0.0))) ==
            Catch::Approx(0.0).margin(1e-12));
  }

  SECTION("nearly coincident top eigenvalues still resolve accurately") {
    // the Rayleigh quotient lands between the clustered eigenvalues, which is
    // within tolerance of the true maximum
    auto spectrum = random_vector(80, rng, 0.5, 8.0);
    spectrum[0] = 10.0;
    spectrum[1] = 10.0 - 1e-10;
    const SymMatrix psd = random_psd_with_spectrum(spectrum, rng);
    REQUIRE(lambda_max(psd) == Catch::Approx(10.0).epsilon(1e-9));
  }

  SECTION("a moderately split top pair exhausts the iteration cap") {
    auto spectrum = random_vector(70, rng, 0.5, 8.0);
    spectrum[0] = 10.0;
    spectrum[1] = 10.0 * (1.0 - 1e-6);  // slow enough that the residual never meets tolerance
    const SymMatrix psd = random_psd_with_spectrum(spectrum, rng);
    REQUIRE_THROWS_AS(detail::power_iteration(psd), NumericalError);
  }
}

TEST_CASE("top_eigenpair returns a consistent eigenvector") {
  Rng rng(5);
  const SymMatrix m = random_psd(12, rng, 0.5, 6.0);
  const auto [value, vec] = top_eigenpair(m);
  const auto mv = m.apply(vec);
  for (std::size_t i = 0; i < vec.size(); ++i)
    REQUIRE(mv[i] == Catch::Approx(value * vec[i]).margin(1e-8));
  REQUIRE(norm(vec) == Catch::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("block_lambda_maxima per-block values") {
  SECTION("diagonal blocks report their forced maxima") {
    std::vector<double> diag;
    Rng rng(2);
    for (int i = 0; i < 10; ++i) diag.push_back(rng.uniform(11.0, 270.5));
    diag[3] = 270.5;
    for (int i = 0; i < 50; ++i) diag.push_back(rng.uniform(11.0, 55.0));
    diag[10 + 7] = 55.0;
    for (int i = 0; i < 250; ++i) diag.push_back(rng.uniform(1.0, 11.0));
    diag[60 + 99] = 11.0;
    const auto maxima =
        block_lambda_maxima(SymMatrix::diagonal(diag), BlockPartition({10, 50, 250}));
    REQUIRE(maxima == std::vector<double>{270.5, 55.0, 11.0});
  }

  SECTION("identical blocks give identical maxima") {
    Rng rng(9);
    const SymMatrix block = random_psd(4, rng, 0.5, 3.0);
    std::vector<double> big(12 * 12, 0.0);
    for (int rep = 0; rep < 3; ++rep)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) big[(rep * 4 + i) * 12 + rep * 4 + j] = block(i, j);
    const auto maxima =
        block_lambda_maxima(SymMatrix::dense(12, big), BlockPartition({4, 4, 4}));
    REQUIRE(maxima[0] == Catch::Approx(maxima[1]).epsilon(1e-12));
    REQUIRE(maxima[1] == Catch::Approx(maxima[2]).epsilon(1e-12));
  }

  SECTION("dense random PSD vs per-block oracle") {
    Rng rng(13);
    const SymMatrix m = random_psd(15, rng, 0.2, 4.0);
    const BlockPartition part({4, 5, 6});
    const auto maxima = block_lambda_maxima(m, part);
    for (std::size_t b = 0; b < 3; ++b) {
      const SymMatrix sub = m.principal_block(part.offset(b), part.size(b));
      REQUIRE(maxima[b] == Catch::Approx(oracle::lambda_max(sub)).epsilon(1e-9));
    }
  }

  SECTION("dimension mismatch is rejected") {
    REQUIRE_THROWS_AS(block_lambda_maxima(SymMatrix::identity(5), BlockPartition({2, 2})),
                      ValidationError);
  }
}

TEST_CASE("block maxima sandwich the global maximum") {
  // max_i L_i <= lambda_max(L) <= sum_i L_i on random instances
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + rng.index(30);
    const BlockPartition part = random_partition(dim, 6, rng);
    const SymMatrix m = random_psd(dim, rng, 0.05, 5.0);
    const SmoothnessModel model(m, part);
    double sum = 0.0, top = 0.0;
    for (double v : model.block_maxima()) {
      sum += v;
      top = std::max(top, v);
    }
    REQUIRE(top <= model.global_max() + 1e-8);
    REQUIRE(model.global_max() <= sum + 1e-8);
  }
}
