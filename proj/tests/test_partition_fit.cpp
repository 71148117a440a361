#include <doctest.h>

#include <Eigen/Core>
#include <vector>

#include "subman/analysis.hpp"
#include "subman/errors.hpp"
#include "subman/partition_estimate.hpp"
#include "subman/rng.hpp"

using namespace subman;

namespace {

Dataset random_dataset(std::size_t m, int d, std::uint64_t seed) {
  Rng rng(seed);
  Dataset ds;
  ds.phases.resize(m);
  ds.coords.resize(static_cast<Eigen::Index>(m), d);
  for (std::size_t i = 0; i < m; ++i) {
    ds.phases[i] = rng.uniform01();
    for (int j = 0; j < d; ++j) {
      ds.coords(static_cast<Eigen::Index>(i), j) = rng.normal();
    }
  }
  return ds;
}

// naive group-by-cell means, the closed-form minimizer computed the slow way
Eigen::MatrixXd naive_cell_means(const Dataset& ds, const Partition& p) {
  const Eigen::Index N = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(N, ds.dim());
  std::vector<std::size_t> counts(p.size(), 0);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(p.cell_index(ds.phases[i]));
    sums.row(k) += ds.coords.row(static_cast<Eigen::Index>(i));
    ++counts[static_cast<std::size_t>(k)];
  }
  for (Eigen::Index k = 0; k < N; ++k) {
    if (counts[static_cast<std::size_t>(k)] > 0) {
      sums.row(k) /= static_cast<double>(counts[static_cast<std::size_t>(k)]);
    }
  }
  return sums;
}

}  // namespace

TEST_SUITE_BEGIN("partition_fit");

TEST_CASE("coefficients equal per-cell sample means") {
  const Partition p(4);
  const Dataset ds = random_dataset(800, 2, 5);
  const PartitionEstimate est = fit_partition(ds, p);
  const Eigen::MatrixXd naive = naive_cell_means(ds, p);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (est.counts()[k] == 0) continue;
    CHECK((est.coeffs().row(static_cast<Eigen::Index>(k)) -
           naive.row(static_cast<Eigen::Index>(k)))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("fit minimizes empirical risk against perturbations") {
  const Partition p(3);
  const Dataset ds = random_dataset(500, 3, 17);
  const PartitionEstimate est = fit_partition(ds, p);
  const double base = empirical_risk(est.as_curve(), ds);
  Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    Eigen::MatrixXd perturbed = est.coeffs();
    for (Eigen::Index k = 0; k < perturbed.rows(); ++k) {
      for (Eigen::Index j = 0; j < perturbed.cols(); ++j) {
        perturbed(k, j) += 0.05 * rng.normal();
      }
    }
    const PartitionEstimate other(p, perturbed, est.counts(), est.fills());
    CHECK(base <= empirical_risk(other.as_curve(), ds) + 1e-15);
  }
}

TEST_CASE("empty cells inherit the nearest nonempty value, ties downward") {
  // level 2: reps at 0.125, 0.375, 0.625, 0.875. Populate cells 0 and 2 only;
  // cells 1 and 3 are each equidistant from both, so both must fill from 0.
  Dataset ds;
  ds.phases = {0.1, 0.6};
  ds.coords.resize(2, 1);
  ds.coords << 10.0, 20.0;
  const PartitionEstimate est = fit_partition(ds, Partition(2));
  CHECK(est.counts() == std::vector<std::size_t>{1, 0, 1, 0});
  REQUIRE(est.fills().size() == 2);
  for (const FillRecord& f : est.fills()) {
    CHECK(f.source == 0);
    CHECK(est.coeffs()(static_cast<Eigen::Index>(f.cell), 0) == 10.0);
  }
}

TEST_CASE("empty cell fill respects circular wraparound") {
  // level 3: populate cell 7 only among the neighbors of cell 0; cell 0 must
  // fill from 7 across the wrap, not from the far-away cell 3.
  Dataset ds;
  ds.phases = {0.95, 0.45};
  ds.coords.resize(2, 1);
  ds.coords << -1.0, 4.0;
  const PartitionEstimate est = fit_partition(ds, Partition(3));
  CHECK(est.coeffs()(0, 0) == -1.0);
}

TEST_CASE("coordinates are fit independently") {
  const Partition p(3);
  const Dataset joint = random_dataset(300, 2, 31);
  const PartitionEstimate both = fit_partition(joint, p);
  for (int j = 0; j < 2; ++j) {
    Dataset single;
    single.phases = joint.phases;
    single.coords = joint.coords.col(j);
    const PartitionEstimate one = fit_partition(single, p);
    CHECK((both.coeffs().col(j) - one.coeffs().col(0)).cwiseAbs().maxCoeff() <
          1e-15);
  }
}

TEST_CASE("evaluation routes through the owning cell") {
  const Partition p(2);
  const Dataset ds = random_dataset(100, 1, 3);
  const PartitionEstimate est = fit_partition(ds, p);
  for (std::size_t k = 0; k < p.size(); ++k) {
    CHECK(est(p.representative(k))(0) ==
          est.coeffs()(static_cast<Eigen::Index>(k), 0));
  }
  CHECK(est(1.25)(0) == est(0.25)(0));  // wrapped input
}

TEST_CASE("fitting rejects an empty dataset") {
  Dataset ds;
  ds.coords.resize(0, 1);
  CHECK_THROWS_AS(fit_partition(ds, Partition(2)), InputError);
}

TEST_SUITE_END();
