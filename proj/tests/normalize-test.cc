// fvc/tests/normalize-test.cc

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

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "fvc/base/error.h"
#include "fvc/base/random.h"
#include "fvc/feat/normal-quantile.h"
#include "fvc/feat/normalize.h"

using namespace fvc;

namespace {

FeatureMatrix RandomFeatures(uint64_t seed, int frames, int dim) {
  Rng rng(seed);
  FeatureMatrix f;
  f.vectors.resize(frames, dim);
  for (int i = 0; i < frames; ++i)
    for (int j = 0; j < dim; ++j) f.vectors(i, j) = rng.Normal(j - 2.0, 0.5 + j);
  return f;
}

double BoostQuantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

}  // namespace

TEST_CASE("normal quantile against boost") {
  CHECK(NormalQuantile(0.5) == 0.0);
  for (double p : {1e-8, 1e-6, 0.5 / 301.0, 0.01, 0.1, 0.3, 0.5, 0.77, 0.975, 1 - 1e-6, 1 - 1e-8})
    CHECK(std::abs(NormalQuantile(p) - BoostQuantile(p)) < 1e-9);
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const double p = 1e-8 + (1 - 2e-8) * rng.Uniform();
    CHECK(std::abs(NormalQuantile(p) - BoostQuantile(p)) < 1e-9);
  }
}

TEST_CASE("cms") {
  const FeatureMatrix f = RandomFeatures(2, 200, 5);
  const FeatureMatrix c = Cms(f);
  CHECK(c.stage == FeatureStage::kCompensated);
  CHECK(c.vectors.colwise().mean().cwiseAbs().maxCoeff() < 1e-9);
  CHECK((Cms(c).vectors - c.vectors).cwiseAbs().maxCoeff() < 1e-9);
  FeatureMatrix shifted = f;
  shifted.vectors.col(3).array() += 17.5;
  CHECK((Cms(shifted).vectors - c.vectors).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("cmvn") {
  const FeatureMatrix f = RandomFeatures(3, 300, 4);
  const FeatureMatrix c = Cmvn(f);
  for (int j = 0; j < 4; ++j) {
    const Vector col = c.vectors.col(j);
    CHECK(std::abs(col.mean()) < 1e-9);
    CHECK(std::abs((col.array() - col.mean()).square().mean() - 1.0) < 1e-9);
  }
  CHECK((Cmvn(c).vectors - c.vectors).cwiseAbs().maxCoeff() < 1e-9);
  FeatureMatrix scaled = f;
  scaled.vectors.col(1) *= 5.0;
  CHECK((Cmvn(scaled).vectors - c.vectors).cwiseAbs().maxCoeff() < 1e-9);
  FeatureMatrix flat = f;
  flat.vectors.col(2).setConstant(4.0);
  const FeatureMatrix z = Cmvn(flat);
  CHECK((z.vectors.col(2).array() == 0.0).all());
  CHECK(z.vectors.allFinite());
}

TEST_CASE("windowed mean removal") {
  const FeatureMatrix f = RandomFeatures(4, 100, 2);
  const FeatureMatrix w = CmsWindowed(f, 10);
  for (int t : {0, 5, 50, 99}) {
    const int lo = std::max(0, t - 10), hi = std::min(99, t + 10);
    const double mean = f.vectors.col(0).segment(lo, hi - lo + 1).mean();
    CHECK(w.vectors(t, 0) == doctest::Approx(f.vectors(t, 0) - mean));
  }
  // A window wider than the track is the global transform.
  CHECK((CmsWindowed(f, 1000).vectors - Cms(f).vectors).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((CmvnWindowed(f, 1000).vectors - Cmvn(f).vectors).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("warp of the median and the minimum") {
  FeatureMatrix f;
  f.vectors.resize(301, 1);
  Rng rng(5);
  std::vector<double> values(301);
  for (double& v : values) v = rng.Normal();
  for (int i = 0; i < 301; ++i) f.vectors(i, 0) = values[i];
  // Put the median and the minimum in the centre frame in turn.
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  auto centre_with = [&](double v) {
    FeatureMatrix g = f;
    const auto it = std::find(values.begin(), values.end(), v);
    std::swap(g.vectors(150, 0), g.vectors(it - values.begin(), 0));
    return FeatureWarp(g).vectors(150, 0);
  };
  CHECK(centre_with(sorted[150]) == 0.0);
  const double lowest = centre_with(sorted[0]);
  CHECK(lowest == doctest::Approx(BoostQuantile(0.5 / 301.0)).epsilon(1e-9));
  CHECK(lowest == doctest::Approx(-2.94).epsilon(0.005));
}

TEST_CASE("warp keeps order inside a window") {
  FeatureMatrix f;
  f.vectors.resize(50, 1);
  for (int i = 0; i < 50; ++i) f.vectors(i, 0) = 0.1 * i * i;
  const FeatureMatrix w = FeatureWarp(f, WarpConfig{200});
  for (int i = 1; i < 50; ++i) CHECK(w.vectors(i, 0) > w.vectors(i - 1, 0));

  // Frames sharing the same full window: larger raw value, larger output.
  const FeatureMatrix g = RandomFeatures(6, 40, 1);
  const FeatureMatrix wg = FeatureWarp(g, WarpConfig{100});
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j)
      if (g.vectors(i, 0) > g.vectors(j, 0)) CHECK(wg.vectors(i, 0) > wg.vectors(j, 0));
}

TEST_CASE("warp ties follow frame order") {
  FeatureMatrix f;
  f.vectors = RowMatrix::Constant(5, 1, 2.0);
  const FeatureMatrix w = FeatureWarp(f, WarpConfig{10});
  for (int i = 0; i < 5; ++i)
    CHECK(w.vectors(i, 0) == doctest::Approx(BoostQuantile((i + 0.5) / 5.0)).epsilon(1e-9));
}

TEST_CASE("warped long track is standard normal") {
  Rng rng(7);
  FeatureMatrix f;
  f.vectors.resize(10000, 2);
  for (int i = 0; i < 10000; ++i) {
    f.vectors(i, 0) = rng.Uniform();
    f.vectors(i, 1) = std::pow(rng.Normal(), 3);
  }
  const FeatureMatrix w = FeatureWarp(f);
  CHECK(w.stage == FeatureStage::kCompensated);
  for (int j = 0; j < 2; ++j) {
    std::vector<double> v(10000);
    for (int i = 0; i < 10000; ++i) v[i] = w.vectors(i, j);
    std::sort(v.begin(), v.end());
    double ks = 0.0, mean = 0.0, var = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double cdf = 0.5 * std::erfc(-v[i] / std::sqrt(2.0));
      ks = std::max({ks, std::abs((i + 1) / 1e4 - cdf), std::abs(i / 1e4 - cdf)});
      mean += v[i];
    }
    mean /= 1e4;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= 1e4;
    CHECK(ks < 0.02);
    CHECK(std::abs(mean) < 0.05);
    CHECK(std::abs(var - 1.0) < 0.05);
  }
}

TEST_CASE("compensation names") {
  for (Compensation c : {Compensation::kNone, Compensation::kCms, Compensation::kCmvn,
                         Compensation::kWarp})
    CHECK(ParseCompensation(CompensationName(c)) == c);
  CHECK_THROWS_AS(ParseCompensation("rasta"), InvalidArgument);
  const FeatureMatrix f = RandomFeatures(8, 20, 2);
  CHECK(Compensate(f, Compensation::kNone).vectors == f.vectors);
  CHECK(Compensate(f, Compensation::kCms).vectors == Cms(f).vectors);
}
