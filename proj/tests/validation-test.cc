// fvc/tests/validation-test.cc

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
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fvc/base/error.h"
#include "fvc/base/random.h"
#include "fvc/eval/tippett-svg.h"
#include "fvc/eval/validation.h"
#include "fvc/synth/synthetic.h"

using namespace fvc;
namespace fs = std::filesystem;

namespace {

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Calibrated log LRs for N(+-m, 1) scores: log LR = 2 m s.
TrialSet Calibrated(double m, int n, uint64_t seed) {
  auto [s, d] = GenScoreSets(m, -m, 1.0, n, seed);
  for (double& v : s) v *= 2 * m;
  for (double& v : d) v *= 2 * m;
  return {s, d};
}

}  // namespace

TEST_CASE("cllr by hand") {
  CHECK(ComputeCllr({{0.0}, {0.0}}) == 1.0);
  // LR 2 on both sides: log2(1 + 1/2) for each half.
  const double l = std::log(2.0);
  CHECK(ComputeCllr({{l}, {-l}}) == doctest::Approx(std::log2(1.5)).epsilon(1e-14));
  // LR 3 for the same pair, LR 1 for the different pair.
  CHECK(ComputeCllr({{std::log(3.0)}, {0.0}}) ==
        doctest::Approx(0.5 * (std::log2(4.0 / 3.0) + 1.0)).epsilon(1e-14));
  CHECK(ComputeCllr({{60.0, 80.0}, {-60.0, -700.0}}) < 1e-10);
  CHECK(ComputeCllr({{-5.0}, {5.0}}) > 1.0);
  CHECK_THROWS_AS(ComputeCllr({{}, {0.0}}), InvalidArgument);
  CHECK_THROWS_AS(ComputeCllr({{0.0}, {}}), InvalidArgument);
}

TEST_CASE("cllr properties") {
  const TrialSet t = Calibrated(1.0, 2000, 3);
  const double c = ComputeCllr(t);
  CHECK(c < 1.0);
  // Duplicating every trial leaves Cllr unchanged.
  TrialSet twice = t;
  twice.same.insert(twice.same.end(), t.same.begin(), t.same.end());
  twice.diff.insert(twice.diff.end(), t.diff.begin(), t.diff.end());
  CHECK(ComputeCllr(twice) == doctest::Approx(c).epsilon(1e-12));
  // Raising a same-speaker LR or lowering a different-speaker LR lowers Cllr.
  TrialSet better = t;
  better.same[0] += 1.0;
  better.diff[0] -= 1.0;
  CHECK(ComputeCllr(better) < c);
  // Negating the calibration: worse than the neutral system.
  TrialSet flipped = t;
  for (double& v : flipped.same) v = -v;
  for (double& v : flipped.diff) v = -v;
  CHECK(ComputeCllr(flipped) > 1.0);
  // Better separated system.
  CHECK(ComputeCllr(Calibrated(2.0, 2000, 3)) < c);
}

TEST_CASE("tippett curves") {
  const TrialSet t{{std::log(10.0), std::log(100.0), std::log(100.0)}, {0.0, -std::log(10.0)}};
  const TippettCurves c = ComputeTippett(t);
  // Ties collapse into a single step.
  REQUIRE(c.same.size() == 2);
  CHECK(c.same[0].log10_lr == doctest::Approx(1.0));
  CHECK(c.same[0].proportion == doctest::Approx(1.0 / 3.0));
  CHECK(c.same[1].proportion == 1.0);
  CHECK(c.SameAt(-10.0) == 0.0);
  CHECK(c.SameAt(1.5) == doctest::Approx(1.0 / 3.0));
  CHECK(c.SameAt(10.0) == 1.0);
  CHECK(c.DiffAt(-10.0) == 1.0);
  CHECK(c.DiffAt(-0.5) == 0.5);
  CHECK(c.DiffAt(10.0) == 0.0);

  const TippettCurves one = ComputeTippett({{std::log(10.0)}, {std::log(10.0)}});
  CHECK(one.SameAt(0.999) == 0.0);
  CHECK(one.SameAt(1.0) == 1.0);
  CHECK(one.DiffAt(1.0) == 1.0);
  CHECK(one.DiffAt(1.001) == 0.0);

  const TippettCurves big = ComputeTippett(Calibrated(1.0, 3000, 4));
  for (std::size_t i = 1; i < big.same.size(); ++i) {
    CHECK(big.same[i].log10_lr > big.same[i - 1].log10_lr);
    CHECK(big.same[i].proportion > big.same[i - 1].proportion);
  }
  for (std::size_t i = 1; i < big.diff.size(); ++i)
    CHECK(big.diff[i].proportion < big.diff[i - 1].proportion);
  CHECK(big.GapAtHalf() > 0.0);
  CHECK(ComputeTippett(Calibrated(2.0, 3000, 4)).GapAtHalf() > big.GapAtHalf());
}

TEST_CASE("report") {
  const TrialSet t = Calibrated(1.0, 300, 6);
  const ValidationReport r = Validate(t, "sys");
  CHECK(r.num_same == 300);
  CHECK(r.num_diff == 300);
  CHECK(r.cllr == ComputeCllr(t));
  char expect[64];
  std::snprintf(expect, sizeof(expect), "Cllr=%.6f Ns=300 Nd=300", r.cllr);
  CHECK(r.Summary() == expect);

  const std::string svg = RenderTippettSvg(r);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(RenderTippettSvg(Validate(t, "sys")) == svg);

  const fs::path dir = fs::path(FVC_TEST_TMPDIR) / "validation" / "report";
  fs::remove_all(dir);
  fs::create_directories(dir);
  WriteValidationReport(dir, t, r);
  for (const char* f : {"trials.csv", "tippett.csv", "tippett.svg", "summary.txt"})
    CHECK(fs::exists(dir / f));
  CHECK(Slurp(dir / "summary.txt") == r.Summary() + "\n");
  CHECK(Slurp(dir / "tippett.svg") == svg);
  const std::string csv = Slurp(dir / "tippett.csv");
  CHECK(csv.rfind("curve,log10_lr,proportion\n", 0) == 0);
}
