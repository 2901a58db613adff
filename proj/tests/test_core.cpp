#include <random>

#include "chebyclust/core.hpp"
#include "chebyclust/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chebyclust;

namespace {

std::vector<FeatureVector> random_rows(std::mt19937_64& rng, std::size_t count, std::size_t dims,
                                       double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<FeatureVector> rows(count, FeatureVector(dims));
  for (auto& r : rows)
    for (double& v : r) v = 0.5 + u(rng);
  return rows;
}

Cluster build(const std::vector<FeatureVector>& rows) {
  Cluster c = Cluster::singleton(0, 0, rows[0]);
  for (std::size_t i = 1; i < rows.size(); ++i) c.add(i, rows[i]);
  return c;
}

void check_against_batch(const Cluster& c, const std::vector<FeatureVector>& rows) {
  const auto batch = oracle::batch_stats(rows);
  const std::size_t n = rows.front().size();
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) scale = std::max(scale, batch.scatter[k * n + k]);
  for (std::size_t k = 0; k < n; ++k) CHECK(oracle::close(c.mean[k], batch.mean[k], 1e-9, 1e-12));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      CHECK(oracle::close(c.scatter(a, b), batch.scatter[a * n + b], 1e-9, scale));
      CHECK(c.scatter(a, b) == c.scatter(b, a));
    }
}

}  // namespace

TEST_CASE("update_statistics: identical points leave zero scatter") {
  const FeatureVector p{0.2, 0.2, 0.2};
  const Cluster c = update_statistics(Cluster::singleton(0, 0, p), 1, p);
  CHECK(c.count == 2);
  CHECK(c.members.size() == 2);
  for (std::size_t k = 0; k < 3; ++k) CHECK(c.mean[k] == 0.2);
  for (double v : c.scatter.data()) CHECK(v == 0.0);
}

TEST_CASE("update_statistics: two opposite corners") {
  const Cluster c = update_statistics(Cluster::singleton(0, 0, FeatureVector{0, 0, 0}), 1,
                                      FeatureVector{1, 1, 1});
  for (double m : c.mean) CHECK(m == 0.5);
  const SquareMatrix cov = covariance(c);
  for (double v : cov.data()) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("update_statistics: five random additions equal batch statistics") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rows = random_rows(rng, 6, 3, 0.5);
    check_against_batch(build(rows), rows);
  }
}

TEST_CASE("update_statistics: long sequences and other dimensionalities") {
  std::mt19937_64 rng(5);
  for (std::size_t dims : {1u, 2u, 3u, 5u}) {
    const auto rows = random_rows(rng, 1000, dims, 0.01);
    check_against_batch(build(rows), rows);
  }
}

TEST_CASE("statistics are insensitive to insertion order") {
  std::mt19937_64 rng(9);
  auto rows = random_rows(rng, 40, 3, 0.3);
  const Cluster a = build(rows);
  std::shuffle(rows.begin(), rows.end(), rng);
  const Cluster b = build(rows);
  for (std::size_t k = 0; k < 3; ++k) CHECK(oracle::close(a.mean[k], b.mean[k], 1e-9, 1e-12));
  for (std::size_t i = 0; i < 9; ++i)
    CHECK(oracle::close(a.scatter.data()[i], b.scatter.data()[i], 1e-9, a.scatter(0, 0)));
}

TEST_CASE("update_statistics rejects a dimension mismatch") {
  Cluster c = Cluster::singleton(0, 0, FeatureVector{0, 0, 0});
  CHECK_THROWS_AS(c.add(1, FeatureVector{1, 1}), InvalidInput);
  CHECK(c.count == 1);
}

TEST_CASE("covariance of degenerate clusters is zero") {
  const Cluster one = Cluster::singleton(3, 7, FeatureVector{0.4, 0.1, 0.9});
  const SquareMatrix cov_one = covariance(one);
  for (double v : cov_one.data()) CHECK(v == 0.0);
  Cluster same = one;
  same.add(8, FeatureVector{0.4, 0.1, 0.9});
  same.add(9, FeatureVector{0.4, 0.1, 0.9});
  const SquareMatrix cov_same = covariance(same);
  for (double v : cov_same.data()) CHECK(v == 0.0);
}

TEST_CASE("covariance is PSD on random clusters") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Cluster c = build(random_rows(rng, 2 + trial % 7, 3, 0.2));
    const SquareMatrix cov = covariance(c);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int k = 0; k < 10; ++k) {
      const double v[3] = {n(rng), n(rng), n(rng)};
      double q = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) q += v[a] * cov(a, b) * v[b];
      CHECK(q >= -1e-15);
    }
  }
}

TEST_CASE("LearnerConfig validation and vacuous flag") {
  LearnerConfig c;
  c.chebyshev_param = 10;
  CHECK_NOTHROW(c.validate());
  CHECK_FALSE(c.vacuous_bound(3));
  c.chebyshev_param = 3;
  CHECK(c.vacuous_bound(3));
  c.chebyshev_param = 0;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c.chebyshev_param = 5;
  c.ridge = -1e-9;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
}

TEST_CASE("Dataset rejects ragged or non-finite input") {
  CHECK_THROWS_AS(Dataset(3, {1, 2}), InvalidInput);
  CHECK_THROWS_AS(Dataset(1, {std::nan("")}), InvalidInput);
  CHECK_THROWS_AS(Dataset::from_rows({{1, 2}, {1}}), InvalidInput);
  const Dataset d = Dataset::from_rows({{1, 2}, {3, 4}});
  CHECK(d.size() == 2);
  CHECK(d.row(1)[0] == 3);
}
