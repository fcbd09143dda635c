#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <vector>

#include "oracles.hpp"
#include "rpt/dataset.hpp"
#include "rpt/problem.hpp"
#include "rpt/quadratic.hpp"
#include "rpt/random_instances.hpp"
#include "rpt/ridge.hpp"

using namespace rpt;

namespace {
const std::string kFixtureDir = RPT_FIXTURE_DIR;
}

TEST_CASE("make_quadratic value and gradient") {
  SECTION("scalar case") {
    const Problem p = make_quadratic(SymMatrix::diagonal({2.0}), BlockPartition({1}));
    REQUIRE(p.value({3.0}) == 9.0);
    REQUIRE(p.gradient({3.0}) == std::vector<double>{6.0});
    REQUIRE(p.mu == 2.0);
    REQUIRE(p.min_value == 0.0);
  }

  SECTION("identity gradient is the point itself") {
    const Problem p = make_quadratic(SymMatrix::identity(5), BlockPartition({2, 3}));
    const std::vector<double> x{1.0, -2.0, 0.5, 4.0, -1.0};
    REQUIRE(p.gradient(x) == x);
  }

  SECTION("random diagonal matches finite differences") {
    Rng rng(17);
    const Problem p = make_quadratic(SymMatrix::diagonal(random_vector(6, rng, 0.5, 5.0)),
                                     BlockPartition({2, 2, 2}));
    const auto x = random_vector(6, rng, -2.0, 2.0);
    const auto g = p.gradient(x);
    const auto fd = oracle::finite_difference_gradient(p.value, x);
    for (std::size_t j = 0; j < 6; ++j)
      REQUIRE(g[j] == Catch::Approx(fd[j]).epsilon(1e-6).margin(1e-6));
  }

  SECTION("non-PSD input is rejected") {
    REQUIRE_THROWS_AS(make_quadratic(SymMatrix::diagonal({1.0, -0.5}), BlockPartition({2})),
                      ValidationError);
    REQUIRE_THROWS_AS(
        make_quadratic(SymMatrix::dense(2, {1.0, 2.0, 2.0, 1.0}), BlockPartition({2})),
        ValidationError);
  }

  SECTION("singular PSD keeps minimizer but drops mu") {
    const Problem p = make_quadratic(SymMatrix::diagonal({2.0, 0.0}), BlockPartition({2}));
    REQUIRE_FALSE(p.mu.has_value());
    REQUIRE(p.minimizer.has_value());
  }
}

TEST_CASE("generate_synthetic_quadratic") {
  SECTION("forces the block maxima exactly") {
    const Problem p = generate_synthetic_quadratic(
        {10, 10, 10}, {{11.0, 272.0}, {11.0, 53.3}, {1.0, 11.0}}, 3);
    REQUIRE(p.smoothness.block_maxima() == std::vector<double>{272.0, 53.3, 11.0});
    REQUIRE(p.smoothness.global_max() == 272.0);
  }

  SECTION("degenerate range gives a constant block") {
    const Problem p = generate_synthetic_quadratic({4}, {{5.0, 5.0}}, 1);
    REQUIRE(p.smoothness.matrix().data() == std::vector<double>(4, 5.0));
  }

  SECTION("fixed seed is reproducible") {
    const Problem a = generate_synthetic_quadratic({5, 7}, {{2.0, 9.0}, {0.5, 2.0}}, 42);
    const Problem b = generate_synthetic_quadratic({5, 7}, {{2.0, 9.0}, {0.5, 2.0}}, 42);
    REQUIRE(a.smoothness.matrix().data() == b.smoothness.matrix().data());
    const Problem c = generate_synthetic_quadratic({5, 7}, {{2.0, 9.0}, {0.5, 2.0}}, 43);
    REQUIRE(a.smoothness.matrix().data() != c.smoothness.matrix().data());
  }

  SECTION("bad inputs") {
    REQUIRE_THROWS_AS(generate_synthetic_quadratic({0, 3}, {{1.0, 2.0}, {1.0, 2.0}}, 1),
                      ValidationError);
    REQUIRE_THROWS_AS(generate_synthetic_quadratic({2}, {{3.0, 2.0}}, 1), ValidationError);
    REQUIRE_THROWS_AS(generate_synthetic_quadratic({2}, {{0.0, 2.0}}, 1), ValidationError);
  }
}

TEST_CASE("make_ridge") {
  SECTION("one-dimensional hand solve") {
    Dataset d;
    d.n = 1;
    d.m = 1;
    d.features = {1.0};
    d.targets = {1.0};
    const Problem p = make_ridge(d, 0.5, BlockPartition({1}));
    REQUIRE((*p.minimizer)[0] == Catch::Approx(2.0 / 3.0).epsilon(1e-12));
    REQUIRE(*p.min_value == Catch::Approx(1.0 / 3.0).epsilon(1e-12));
    // gradient at x = 1: 2(x - 1) + 2*0.5*x
    REQUIRE(p.gradient({1.0})[0] == Catch::Approx(1.0).epsilon(1e-12));
  }

  SECTION("zero targets minimize at the origin") {
    Rng rng(5);
    Dataset d;
    d.n = 8;
    d.m = 3;
    d.features = random_vector(24, rng, -1.0, 1.0);
    d.targets.assign(8, 0.0);
    const Problem p = make_ridge(d, 0.2, BlockPartition({1, 2}));
    for (double v : *p.minimizer) REQUIRE(v == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(*p.min_value == Catch::Approx(0.0).margin(1e-14));
  }

  SECTION("random dataset matches finite differences") {
    Rng rng(23);
    Dataset d;
    d.n = 20;
    d.m = 5;
    d.features = random_vector(100, rng, -2.0, 2.0);
    d.targets = random_vector(20, rng, -3.0, 3.0);
    const Problem p = make_ridge(d, 0.1, BlockPartition({2, 3}));
    const auto x = random_vector(5, rng, -1.5, 1.5);
    const auto g = p.gradient(x);
    const auto fd = oracle::finite_difference_gradient(p.value, x);
    for (std::size_t j = 0; j < 5; ++j)
      REQUIRE(g[j] == Catch::Approx(fd[j]).epsilon(1e-6).margin(1e-6));
  }

  SECTION("minimizer is stationary") {
    Rng rng(31);
    Dataset d;
    d.n = 30;
    d.m = 6;
    d.features = random_vector(180, rng, -2.0, 2.0);
    d.targets = random_vector(30, rng, -5.0, 5.0);
    const Problem p = make_ridge(d, 0.1, BlockPartition({2, 2, 2}));
    const double at_min = norm(p.gradient(*p.minimizer));
    const double at_zero = norm(p.gradient(std::vector<double>(6, 0.0)));
    REQUIRE(at_min <= 1e-8 * (1.0 + at_zero));
  }

  SECTION("gradient is linear with the smoothness matrix as its slope") {
    Rng rng(37);
    Dataset d;
    d.n = 12;
    d.m = 4;
    d.features = random_vector(48, rng, -1.0, 1.0);
    d.targets = random_vector(12, rng, -2.0, 2.0);
    const Problem p = make_ridge(d, 0.3, BlockPartition({4}));
    const auto x = random_vector(4, rng, -1.0, 1.0);
    const auto y = random_vector(4, rng, -1.0, 1.0);
    const auto gx = p.gradient(x);
    const auto gy = p.gradient(y);
    std::vector<double> diff(4);
    for (int j = 0; j < 4; ++j) diff[j] = x[j] - y[j];
    const auto ldiff = p.smoothness.matrix().apply(diff);
    for (int j = 0; j < 4; ++j)
      REQUIRE(gx[j] - gy[j] == Catch::Approx(ldiff[j]).margin(1e-10));
  }

  SECTION("invalid lambda and partition") {
    Dataset d;
    d.n = 2;
    d.m = 2;
    d.features = {1.0, 0.0, 0.0, 1.0};
    d.targets = {1.0, 2.0};
    REQUIRE_THROWS_AS(make_ridge(d, 0.0, BlockPartition({2})), ValidationError);
    REQUIRE_THROWS_AS(make_ridge(d, -1.0, BlockPartition({2})), ValidationError);
    REQUIRE_THROWS_AS(make_ridge(d, 0.1, BlockPartition({3})), ValidationError);
  }
}

TEST_CASE("matrix smoothness and strong convexity hold along random pairs") {
  Rng rng(41);
  const Problem quad = generate_synthetic_quadratic({3, 4}, {{1.0, 6.0}, {0.3, 1.0}}, 9);

  Dataset data;
  data.n = 25;
  data.m = 5;
  data.features = random_vector(125, rng, -2.0, 2.0);
  data.targets = random_vector(25, rng, -2.0, 2.0);
  const Problem ridge = make_ridge(data, 0.15, BlockPartition({2, 3}));

  for (const Problem* p : {&quad, &ridge}) {
    const auto& l = p->smoothness.matrix();
    for (int trial = 0; trial < 1000; ++trial) {
      const auto x = random_vector(p->dim(), rng, -3.0, 3.0);
      const auto y = random_vector(p->dim(), rng, -3.0, 3.0);
      std::vector<double> diff(p->dim());
      for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = x[j] - y[j];
      const auto gy = p->gradient(y);
      const double bregman = p->value(x) - p->value(y) - dot(gy, diff);
      REQUIRE(bregman <= 0.5 * l.quad_form(diff) + 1e-9);
      REQUIRE(bregman >= 0.5 * (*p->mu) * norm_sq(diff) - 1e-9);
    }
  }
}

TEST_CASE("block_gradient restriction") {
  const Problem p = make_quadratic(SymMatrix::diagonal({4.0, 1.0, 2.0, 3.0, 5.0, 0.5}),
                                   BlockPartition({2, 2, 2}));
  const std::vector<double> x{1.0, -1.0, 2.0, 0.5, -2.0, 3.0};

  SECTION("all blocks equals the full gradient exactly") {
    REQUIRE(block_gradient(p, x, {0, 1, 2}) == p.gradient(x));
  }

  SECTION("empty set gives the zero vector") {
    REQUIRE(block_gradient(p, x, {}) == std::vector<double>(6, 0.0));
  }

  SECTION("single block matches the masked full gradient") {
    const auto full = p.gradient(x);
    for (std::size_t b = 0; b < 3; ++b) {
      const auto restricted = block_gradient(p, x, {b});
      for (std::size_t j = 0; j < 6; ++j) {
        const bool inside = j / 2 == b;
        REQUIRE(restricted[j] == (inside ? full[j] : 0.0));
      }
    }
  }

  SECTION("out-of-range or duplicate block index") {
    REQUIRE_THROWS_AS(block_gradient(p, x, {3}), ValidationError);
    REQUIRE_THROWS_AS(block_gradient(p, x, {0, 0}), ValidationError);
  }
}

TEST_CASE("csv ingestion") {
  SECTION("fixture loads with header and trailing target") {
    CsvOptions opts;
    opts.has_header = true;
    const Dataset d = read_csv(kFixtureDir + "/ridge_synthetic.csv", opts);
    REQUIRE(d.n == 50);
    REQUIRE(d.m == 8);
    REQUIRE(d.column_names.size() == 8);
    REQUIRE(d.column_names[0] == "age");
    REQUIRE_NOTHROW(d.validate());
  }

  SECTION("target by name") {
    CsvOptions opts;
    opts.has_header = true;
    opts.target_name = "income";
    const Dataset d = read_csv(kFixtureDir + "/ridge_synthetic.csv", opts);
    REQUIRE(d.m == 8);
    REQUIRE(d.column_names[1] == "rooms");
  }

  SECTION("malformed cell names row and column") {
    const std::string path = "bad_fixture.csv";
    {
      std::FILE* f = std::fopen(path.c_str(), "w");
      std::fputs("1.0,2.0\n3.0,oops\n", f);
      std::fclose(f);
    }
    try {
      read_csv(path, {});
      FAIL("expected IoError");
    } catch (const IoError& e) {
      const std::string what = e.what();
      REQUIRE(what.find("line 2") != std::string::npos);
      REQUIRE(what.find("column 2") != std::string::npos);
    }
    std::remove(path.c_str());
  }

  SECTION("missing file") {
    REQUIRE_THROWS_AS(read_csv("does_not_exist.csv", {}), IoError);
  }
}

TEST_CASE("preprocess") {
  SECTION("two-point column standardizes to minus one, one") {
    Dataset d;
    d.n = 2;
    d.m = 1;
    d.features = {1.0, 3.0};
    d.targets = {0.0, 0.0};
    const auto pre = preprocess(d, false);
    REQUIRE(pre.dataset.feature(0, 0) == Catch::Approx(-1.0).epsilon(1e-12));
    REQUIRE(pre.dataset.feature(1, 0) == Catch::Approx(1.0).epsilon(1e-12));
  }

  SECTION("already sorted diagonal keeps the identity permutation") {
    // standardized non-constant columns tie; the stable sort keeps file order
    Dataset d;
    Rng rng(7);
    d.n = 20;
    d.m = 3;
    d.features = random_vector(60, rng, -4.0, 4.0);
    d.targets = random_vector(20, rng, -1.0, 1.0);
    const auto pre = preprocess(d, false);
    REQUIRE(pre.permutation == std::vector<std::size_t>{0, 1, 2});
  }

  SECTION("constant column is zeroed and ordered last") {
    Dataset d;
    Rng rng(8);
    d.n = 15;
    d.m = 3;
    d.features.resize(45);
    for (std::size_t i = 0; i < 15; ++i) {
      d.features[i * 3 + 0] = 7.5;  // constant
      d.features[i * 3 + 1] = rng.uniform(-2.0, 2.0);
      d.features[i * 3 + 2] = rng.uniform(0.0, 10.0);
    }
    d.targets = random_vector(15, rng, -1.0, 1.0);
    const auto pre = preprocess(d, true);
    REQUIRE(pre.dataset.m == 4);
    REQUIRE(pre.permutation.back() == 0);  // the constant column sank to the end
    for (std::size_t i = 0; i < 15; ++i) REQUIRE(pre.dataset.feature(i, 3) == 0.0);
  }

  SECTION("output Hessian diagonal is non-increasing, bias included") {
    CsvOptions opts;
    opts.has_header = true;
    const Dataset d = read_csv(kFixtureDir + "/ridge_synthetic.csv", opts);
    const auto pre = preprocess(d, true);
    REQUIRE(pre.dataset.m == 9);  // eight features plus the bias column
    // recompute the ridge Hessian diagonal directly from the output
    const double lambda = 0.1;
    std::vector<double> diag(pre.dataset.m);
    for (std::size_t j = 0; j < pre.dataset.m; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < pre.dataset.n; ++i) {
        const double v = pre.dataset.feature(i, j);
        s += v * v;
      }
      diag[j] = 2.0 * s / static_cast<double>(pre.dataset.n) + 2.0 * lambda;
    }
    for (std::size_t j = 0; j + 1 < diag.size(); ++j) REQUIRE(diag[j] >= diag[j + 1] - 1e-12);
    REQUIRE(pre.dataset.column_names.back() == "fixed");  // the constant column
    // permutation is a bijection
    std::vector<bool> seen(pre.permutation.size(), false);
    for (auto v : pre.permutation) {
      REQUIRE(v < seen.size());
      REQUIRE_FALSE(seen[v]);
      seen[v] = true;
    }
  }

  SECTION("empty dataset is rejected") {
    Dataset d;
    REQUIRE_THROWS_AS(preprocess(d, true), ValidationError);
  }
}
