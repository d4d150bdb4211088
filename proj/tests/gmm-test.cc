// fvc/tests/gmm-test.cc

// Copyright 2026  The fvc Authors

// See COPYING at the top of the source tree for clarification regarding
// multiple authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>

#include "fvc/base/random.h"
#include "fvc/gmm/diag-gmm.h"
#include "fvc/gmm/em.h"
#include "fvc/gmm/kmeans.h"
#include "fvc/gmm/map-adapt.h"

namespace fs = std::filesystem;
using namespace fvc;

namespace {

double NormalPdf(double x, double mean, double var) {
  return std::exp(-0.5 * (x - mean) * (x - mean) / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

DiagGmm RandomGmm(Rng& rng, int g, int m) {
  Vector w(g);
  Matrix mu(g, m), var(g, m);
  for (int i = 0; i < g; ++i) {
    w[i] = 0.2 + rng.Uniform();
    for (int j = 0; j < m; ++j) {
      mu(i, j) = rng.Normal(0.0, 2.0);
      var(i, j) = 0.3 + rng.Uniform();
    }
  }
  return DiagGmm(w / w.sum(), mu, var);
}

RowMatrix Sample(Rng& rng, const DiagGmm& gmm, int n) {
  RowMatrix x(n, gmm.Dim());
  for (int i = 0; i < n; ++i) {
    double u = rng.Uniform(), acc = 0.0;
    int g = 0;
    for (; g < gmm.NumComponents() - 1; ++g) {
      acc += gmm.weights()[g];
      if (u < acc) break;
    }
    for (int j = 0; j < gmm.Dim(); ++j)
      x(i, j) = rng.Normal(gmm.means()(g, j), std::sqrt(gmm.variances()(g, j)));
  }
  return x;
}

}  // namespace

TEST_CASE("log density examples") {
  DiagGmm unit(Vector::Ones(1), Matrix::Zero(1, 1), Matrix::Ones(1, 1));
  CHECK(unit.LogDensity(Eigen::RowVectorXd::Zero(1)) == doctest::Approx(-0.9189385332));

  DiagGmm twin(Vector::Constant(2, 0.5), Matrix::Zero(2, 1), Matrix::Ones(2, 1));
  Eigen::RowVectorXd x(1);
  x << 0.7;
  CHECK(twin.LogDensity(x) == doctest::Approx(unit.LogDensity(x)).epsilon(1e-14));

  Vector w(2);
  w << 0.3, 0.7;
  Matrix mu(2, 1), var(2, 1);
  mu << -1, 2;
  var << 1, 4;
  DiagGmm two(w, mu, var);
  const double expect = std::log(0.3 * NormalPdf(0, -1, 1) + 0.7 * NormalPdf(0, 2, 4));
  CHECK(two.LogDensity(Eigen::RowVectorXd::Zero(1)) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("log density agrees with the linear form") {
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const DiagGmm gmm = RandomGmm(rng, 1 + k % 5, 1 + k % 4);
    Eigen::RowVectorXd x(gmm.Dim());
    for (int j = 0; j < gmm.Dim(); ++j) x[j] = rng.Normal();
    double lin = 0.0;
    for (int g = 0; g < gmm.NumComponents(); ++g) {
      double p = gmm.weights()[g];
      for (int j = 0; j < gmm.Dim(); ++j)
        p *= NormalPdf(x[j], gmm.means()(g, j), gmm.variances()(g, j));
      lin += p;
    }
    CHECK(std::abs(std::exp(gmm.LogDensity(x)) - lin) <= 1e-9 * lin);
  }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(DiagGmm(Vector::Constant(2, 0.4), Matrix::Zero(2, 1), Matrix::Ones(2, 1)),
                  InvalidArgument);
  CHECK_THROWS_AS(DiagGmm(Vector::Ones(1), Matrix::Zero(1, 1), Matrix::Zero(1, 1)),
                  InvalidArgument);
  CHECK_THROWS_AS(DiagGmm(Vector::Ones(1), Matrix::Zero(1, 2), Matrix::Ones(1, 1)),
                  InvalidArgument);
  DiagGmm g(Vector::Ones(1), Matrix::Zero(1, 2), Matrix::Ones(1, 2));
  CHECK_THROWS_AS(g.LogDensity(Eigen::RowVectorXd::Zero(3)), DimensionMismatch);
}

TEST_CASE("responsibilities are normalized") {
  Rng rng(2);
  const DiagGmm gmm = RandomGmm(rng, 6, 3);
  const RowMatrix x = Sample(rng, gmm, 200);
  const Responsibilities r = ComputeResponsibilities(gmm, x);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    CHECK(std::abs(r.gamma.row(i).sum() - 1.0) < 1e-9);
    CHECK(r.gamma.row(i).minCoeff() >= 0.0);
    CHECK(r.gamma.row(i).maxCoeff() <= 1.0);
    CHECK(r.frame_log_likelihood[i] == doctest::Approx(gmm.LogDensity(x.row(i))));
  }
}

TEST_CASE("kmeans") {
  Rng rng(3);
  RowMatrix x(400, 2);
  for (Eigen::Index i = 0; i < x.rows(); ++i) x.row(i) << rng.Normal(1.0, 2.0), rng.Normal(-3.0, 0.5);
  const DiagGmm one = KMeansInit(x, 1, 0);
  CHECK((one.means().row(0) - x.colwise().mean()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(one.weights()[0] == 1.0);

  // Twenty points in two clouds; brute-force the best 2-partition.
  RowMatrix y(12, 1);
  for (int i = 0; i < 12; ++i) y(i, 0) = (i < 6 ? -5.0 : 5.0) + rng.Normal(0.0, 0.5);
  double best = std::numeric_limits<double>::infinity();
  double best_lo = 0.0, best_hi = 0.0;
  for (int mask = 1; mask < (1 << 12) - 1; ++mask) {
    double s[2] = {0, 0}, n[2] = {0, 0};
    for (int i = 0; i < 12; ++i) s[(mask >> i) & 1] += y(i, 0), n[(mask >> i) & 1] += 1;
    double cost = 0.0;
    for (int i = 0; i < 12; ++i) {
      const int c = (mask >> i) & 1;
      cost += std::pow(y(i, 0) - s[c] / n[c], 2);
    }
    if (cost < best) {
      best = cost;
      best_lo = std::min(s[0] / n[0], s[1] / n[1]);
      best_hi = std::max(s[0] / n[0], s[1] / n[1]);
    }
  }
  const KMeansResult km = KMeans(y, 2, 9);
  const double lo = km.centroids.col(0).minCoeff(), hi = km.centroids.col(0).maxCoeff();
  CHECK(lo == doctest::Approx(best_lo));
  CHECK(hi == doctest::Approx(best_hi));

  const DiagGmm init = KMeansInit(y, 2, 9);
  CHECK(init.weights()[0] == 0.5);
  const double var = (y.col(0).array() - y.col(0).mean()).square().mean();
  CHECK(init.variances()(0, 0) == doctest::Approx(var));
  CHECK(init.variances()(1, 0) == doctest::Approx(var));
  CHECK(KMeansInit(y, 2, 9).means() == init.means());

  RowMatrix dup = RowMatrix::Ones(10, 2);
  CHECK(CountDistinctRows(dup) == 1);
  CHECK_THROWS_AS(KMeansInit(dup, 2, 0), InsufficientDataError);
}

TEST_CASE("em recovers one and two components") {
  Rng rng(4);
  RowMatrix x(1000, 2);
  for (Eigen::Index i = 0; i < x.rows(); ++i) x.row(i) << rng.Normal(3.0, 1.5), rng.Normal();
  EmConfig one;
  one.num_components = 1;
  const EmResult r1 = EmFit(x, one);
  CHECK((r1.gmm.means().row(0) - x.colwise().mean()).cwiseAbs().maxCoeff() < 1e-12);
  const Eigen::RowVectorXd var =
      (x.rowwise() - x.colwise().mean()).array().square().colwise().mean();
  CHECK((r1.gmm.variances().row(0) - var).cwiseAbs().maxCoeff() < 1e-12);

  RowMatrix y(5000, 1);
  for (Eigen::Index i = 0; i < y.rows(); ++i) y(i, 0) = (rng.Uniform() < 0.5 ? -3.0 : 3.0) + rng.Normal();
  EmConfig two;
  two.num_components = 2;
  two.seed = 1;
  const EmResult r2 = EmFit(y, two);
  CHECK(r2.gmm.means().col(0).minCoeff() == doctest::Approx(-3.0).epsilon(0.05));
  CHECK(r2.gmm.means().col(0).maxCoeff() == doctest::Approx(3.0).epsilon(0.05));
  CHECK(r2.converged);
  CHECK(std::abs(r2.gmm.weights().sum() - 1.0) < 1e-9);
}

TEST_CASE("em trace never decreases") {
  for (int k = 0; k < 20; ++k) {
    Rng rng(100 + k);
    const DiagGmm truth = RandomGmm(rng, 2 + k % 5, 1 + k % 3);
    const RowMatrix x = Sample(rng, truth, 500);
    EmConfig cfg;
    cfg.num_components = 1 + k % 6;
    cfg.max_iterations = 30;
    cfg.seed = k;
    const EmResult r = EmFit(x, cfg);
    const auto& tr = r.log_likelihood_trace;
    CHECK(tr.size() == static_cast<std::size_t>(r.iterations) + 1);
    for (std::size_t i = 1; i < tr.size(); ++i)
      CHECK(tr[i] >= tr[i - 1] - 1e-8 * std::abs(tr[i - 1]));
    CHECK(std::abs(r.gmm.weights().sum() - 1.0) < 1e-9);
  }
}

TEST_CASE("em floors variances and is deterministic") {
  Rng rng(5);
  RowMatrix x(300, 2);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    x.row(i) << (i < 100 ? 0.0 : rng.Normal(5.0, 1.0)), rng.Normal();
  EmConfig cfg;
  cfg.num_components = 3;
  cfg.seed = 2;
  const EmResult a = EmFit(x, cfg), b = EmFit(x, cfg);
  CHECK(a.gmm.means() == b.gmm.means());
  CHECK(a.log_likelihood_trace == b.log_likelihood_trace);
  const Eigen::RowVectorXd global =
      (x.rowwise() - x.colwise().mean()).array().square().colwise().mean();
  for (int g = 0; g < 3; ++g)
    for (int j = 0; j < 2; ++j)
      CHECK(a.gmm.variances()(g, j) >= 1e-3 * global[j] * (1 - 1e-12));
  cfg.convergence_threshold = 0.0;
  CHECK_THROWS_AS(EmFit(x, cfg), InvalidArgument);
}

TEST_CASE("map adaptation") {
  Rng rng(6);
  const DiagGmm ubm = RandomGmm(rng, 4, 2);
  RowMatrix x(120, 2);
  for (Eigen::Index i = 0; i < x.rows(); ++i) x.row(i) << rng.Normal(1.0, 1.0), rng.Normal(-1.0, 1.0);

  const MapAdaptation a = MapAdaptMeansDetailed(ubm, x, 16.0);
  CHECK(a.model.weights() == ubm.weights());
  CHECK(a.model.variances() == ubm.variances());
  CHECK(std::abs(a.counts.sum() - 120.0) < 1e-9);
  const Responsibilities r = ComputeResponsibilities(ubm, x);
  for (int g = 0; g < 4; ++g) {
    const double n = r.gamma.col(g).sum();
    CHECK(a.counts[g] == doctest::Approx(n));
    CHECK(a.alpha[g] == doctest::Approx(n / (n + 16.0)));
    for (int j = 0; j < 2; ++j) {
      const double em = r.gamma.col(g).dot(x.col(j)) / n;
      const double lo = std::min(em, ubm.means()(g, j)), hi = std::max(em, ubm.means()(g, j));
      CHECK(a.model.means()(g, j) >= lo - 1e-12);
      CHECK(a.model.means()(g, j) <= hi + 1e-12);
      CHECK(a.model.means()(g, j) ==
            doctest::Approx(a.alpha[g] * em + (1 - a.alpha[g]) * ubm.means()(g, j)));
    }
  }
  CHECK((MapAdaptMeans(ubm, x, 1e12).means() - ubm.means()).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK((MapAdaptMeans(ubm, x, 0.0).means() - a.em_means).cwiseAbs().maxCoeff() <= 1e-12);

  DiagGmm single(Vector::Ones(1), Matrix::Constant(1, 1, 2.0), Matrix::Ones(1, 1));
  RowMatrix sixteen(16, 1);
  for (int i = 0; i < 16; ++i) sixteen(i, 0) = 0.5 * i;
  const MapAdaptation mid = MapAdaptMeansDetailed(single, sixteen, 16.0);
  CHECK(mid.alpha[0] == 0.5);
  CHECK(mid.model.means()(0, 0) == 0.5 * (2.0 + sixteen.col(0).mean()));

  CHECK_THROWS_AS(MapAdaptMeans(ubm, RowMatrix(0, 2), 16.0), InvalidArgument);
  CHECK_THROWS_AS(MapAdaptMeans(ubm, x, -1.0), InvalidArgument);
}

TEST_CASE("gmm file round trip") {
  Rng rng(7);
  const DiagGmm gmm = RandomGmm(rng, 5, 3);
  const fs::path dir = fs::path(FVC_TEST_TMPDIR) / "gmm";
  fs::create_directories(dir);
  WriteGmm(dir / "a.gmm", gmm, {{"seed", "7"}});
  const DiagGmm back = ReadGmm(dir / "a.gmm");
  CHECK(back.weights() == gmm.weights());
  CHECK(back.means() == gmm.means());
  CHECK(back.variances() == gmm.variances());
  CHECK(ReadSidecar(dir / "a.gmm").at("seed") == "7");
  {
    std::ofstream os(dir / "bad.gmm", std::ios::binary);
    os << "NOPE";
  }
  CHECK_THROWS_AS(ReadGmm(dir / "bad.gmm"), FormatError);
}
