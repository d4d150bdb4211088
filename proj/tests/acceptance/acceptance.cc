// fvc/tests/acceptance/acceptance.cc

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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include "json.hpp"
#include <spdlog/spdlog.h>

#include "fvc/backend/plda.h"
#include "fvc/base/parallel.h"
#include "fvc/base/random.h"
#include "fvc/calib/calibration.h"
#include "fvc/eval/validation.h"
#include "fvc/feat/mfcc.h"
#include "fvc/feat/normalize.h"
#include "fvc/gmm/em.h"
#include "fvc/gmm/map-adapt.h"
#include "fvc/ivector/baum-welch.h"
#include "fvc/ivector/tv-model.h"
#include "fvc/pipeline/pipeline.h"
#include "fvc/synth/synthetic.h"

namespace fs = std::filesystem;

namespace fvc {
namespace {

using Detail = std::string;

template <typename... Args>
std::string Fmt(const char* format, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

nlohmann::json LoadFixtures() {
  std::ifstream is(fs::path(FVC_FIXTURES_DIR) / "regression.json");
  if (!is) throw Error("missing fixtures/regression.json");
  return nlohmann::json::parse(is);
}

// 1. Scalar PLDA worked example.
bool PldaWorkedExample(Detail* d) {
  PldaModel model(Vector::Constant(1, 0.0), Matrix::Constant(1, 1, 0.25),
                  Matrix::Constant(1, 1, 1.0));
  const double log_lr = model.Score(Vector::Constant(1, -1.0),
                                    Vector::Constant(1, -1.5));
  const double lr = std::exp(log_lr);
  const double integral = std::exp(PldaIntegralLogLr(0.0, 0.25, 1.0, -1.0, -1.5));
  const double rel = std::abs(integral - lr) / lr;
  *d = Fmt("LR=%.4f quadrature=%.10f rel=%.2e", lr, integral, rel);
  return std::abs(lr - 2.4) <= 0.05 && rel <= 1e-6;
}

// 2. Pooled-Gaussian worked example and logistic recovery.
bool CalibrationWorkedExample(Detail* d) {
  // Two points per class at mean +- 1: means 0.5 and -1.5, pooled variance 1.
  const std::vector<double> same{-0.5, 1.5}, diff{-2.5, -0.5};
  const CalibrationModel pg = FitPooledGaussian(same, diff);
  const double lr = std::exp(pg.Apply(0.5));
  const double direct = PooledGaussianLr(pg, 0.5);

  const nlohmann::json fx = LoadFixtures()["score_sets"];
  const auto [s, t] = GenScoreSets(0.5, -1.5, 1.0, fx["per_class"].get<int>(),
                                   fx["seed"].get<uint64_t>());
  const CalibrationModel lg = FitLogistic(s, t);
  *d = Fmt("a=%.17g b=%.17g LR(0.5)=%.4f direct=%.4f logistic a=%.4f b=%.4f",
           pg.a, pg.b, lr, direct, lg.a, lg.b);
  return pg.a == 1.0 && pg.b == 2.0 && std::abs(lr - 7.39) <= 0.01 &&
         std::abs(direct - 7.39) <= 0.01 && std::abs(lg.a - 1.0) <= 0.05 &&
         std::abs(lg.b - 2.0) <= 0.05;
}

// 3. Cllr reference points.
bool CllrReferencePoints(Detail* d) {
  TrialSet neutral{std::vector<double>(50, 0.0), std::vector<double>(200, 0.0)};
  TrialSet perfect{std::vector<double>(50, 60.0), std::vector<double>(200, -60.0)};
  // Right direction but grossly overconfident, with some errors.
  TrialSet wrong;
  Rng rng(3);
  for (int i = 0; i < 100; ++i) wrong.same.push_back(20.0 * rng.Normal(0.3, 1.0));
  for (int i = 0; i < 100; ++i) wrong.diff.push_back(20.0 * rng.Normal(-0.3, 1.0));
  const double c0 = ComputeCllr(neutral), c1 = ComputeCllr(perfect),
               c2 = ComputeCllr(wrong);
  *d = Fmt("neutral=%.17g perfect=%.3e miscalibrated=%.4f", c0, c1, c2);
  return c0 == 1.0 && c1 < 1e-10 && c2 > 1.0;
}

RowMatrix MixtureData(Rng& rng, int n, int dim, int comps) {
  Matrix centres(comps, dim);
  Vector sds(comps);
  for (int g = 0; g < comps; ++g) {
    for (int j = 0; j < dim; ++j) centres(g, j) = rng.Normal(0.0, 3.0);
    sds[g] = 0.5 + rng.Uniform();
  }
  RowMatrix x(n, dim);
  for (int i = 0; i < n; ++i) {
    const int g = static_cast<int>(rng.Below(static_cast<uint64_t>(comps)));
    for (int j = 0; j < dim; ++j) x(i, j) = centres(g, j) + sds[g] * rng.Normal();
  }
  return x;
}

// 4. EM monotonicity and recovery.
bool EmProperties(Detail* d) {
  int monotone = 0;
  double worst_drop = 0.0;
  for (int k = 0; k < 20; ++k) {
    Rng rng(1000 + k);
    const int dim = 1 + k % 3, comps = 2 + k % 4;
    RowMatrix x = MixtureData(rng, 600 + 50 * k, dim, comps);
    EmConfig cfg;
    cfg.num_components = comps + k % 2;
    cfg.max_iterations = 40;
    cfg.convergence_threshold = 1e-12;
    cfg.seed = k;
    const EmResult r = EmFit(x, cfg);
    bool ok = true;
    const auto& tr = r.log_likelihood_trace;
    for (std::size_t i = 1; i < tr.size(); ++i) {
      const double drop = tr[i - 1] - tr[i];
      worst_drop = std::max(worst_drop, drop / std::max(1.0, std::abs(tr[i - 1])));
      if (drop > 1e-8 * std::max(1.0, std::abs(tr[i - 1]))) ok = false;
    }
    monotone += ok;
  }

  // G = 1: sample mean and population variance.
  Rng rng(77);
  RowMatrix x(400, 3);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < 3; ++j) x(i, j) = rng.Normal(j - 1.0, 0.5 + j);
  EmConfig one;
  one.num_components = 1;
  const EmResult r1 = EmFit(x, one);
  double err1 = 0.0;
  for (Eigen::Index j = 0; j < 3; ++j) {
    double mean = 0.0, var = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) mean += x(i, j);
    mean /= static_cast<double>(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) var += (x(i, j) - mean) * (x(i, j) - mean);
    var /= static_cast<double>(x.rows());
    err1 = std::max({err1, std::abs(r1.gmm.means()(0, j) - mean),
                     std::abs(r1.gmm.variances()(0, j) - var) / var});
  }

  // Two well separated scalar components.
  Rng rng2(5);
  RowMatrix y(5000, 1);
  for (Eigen::Index i = 0; i < y.rows(); ++i)
    y(i, 0) = (rng2.Uniform() < 0.5 ? -2.0 : 2.0) + rng2.Normal();
  EmConfig two;
  two.num_components = 2;
  two.seed = 5;
  const EmResult r2 = EmFit(y, two);
  const double lo = std::min(r2.gmm.means()(0, 0), r2.gmm.means()(1, 0));
  const double hi = std::max(r2.gmm.means()(0, 0), r2.gmm.means()(1, 0));

  *d = Fmt("monotone %d/20 (worst rel drop %.1e); G=1 err %.1e; means %.3f %.3f",
           monotone, worst_drop, err1, lo, hi);
  return monotone == 20 && err1 < 1e-10 && std::abs(lo + 2.0) <= 0.15 &&
         std::abs(hi - 2.0) <= 0.15;
}

// 5. MAP adaptation endpoints and midpoint.
bool MapEndpoints(Detail* d) {
  Rng rng(11);
  Matrix means(4, 3), vars(4, 3);
  for (int g = 0; g < 4; ++g)
    for (int j = 0; j < 3; ++j) {
      means(g, j) = rng.Normal(0.0, 2.0);
      vars(g, j) = 0.5 + rng.Uniform();
    }
  DiagGmm ubm(Vector::Constant(4, 0.25), means, vars);
  RowMatrix x(300, 3);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < 3; ++j) x(i, j) = rng.Normal(0.4, 1.5);

  const DiagGmm inf = MapAdaptMeans(ubm, x, 1e12);
  const DiagGmm zero = MapAdaptMeans(ubm, x, 0.0);
  const Responsibilities resp = ComputeResponsibilities(ubm, x);
  const Vector n = resp.gamma.colwise().sum().transpose();
  const Matrix em = (resp.gamma.transpose() * x).array().colwise() / n.array();
  const double e_inf = (inf.means() - ubm.means()).cwiseAbs().maxCoeff();
  const double e_zero = (zero.means() - em).cwiseAbs().maxCoeff();

  // One component, 16 frames, tau 16: halfway between data mean and UBM mean.
  DiagGmm single(Vector::Ones(1), Matrix::Constant(1, 2, 1.0), Matrix::Ones(1, 2));
  RowMatrix y(16, 2);
  for (Eigen::Index i = 0; i < 16; ++i) y.row(i) << 3.0 + 0.25 * i, -0.5 * i;
  const MapAdaptation mid = MapAdaptMeansDetailed(single, y, 16.0);
  const Eigen::RowVectorXd expect =
      0.5 * y.colwise().mean() + 0.5 * Eigen::RowVectorXd::Ones(2);
  const double e_mid = (mid.model.means().row(0) - expect).cwiseAbs().maxCoeff();
  *d = Fmt("tau=inf %.1e tau=0 %.1e alpha=%.17g midpoint %.1e", e_inf, e_zero,
           mid.alpha[0], e_mid);
  return e_inf <= 1e-6 && e_zero <= 1e-6 && mid.counts[0] == 16.0 &&
         mid.alpha[0] == 0.5 && e_mid <= 1e-12;
}

// 6. Scalar i-vector oracle (one component, one dimension, one factor).
bool ScalarIvectorOracle(Detail* d) {
  double worst = 0.0;
  auto check = [&worst](double got, double want) {
    worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
  };
  for (int inst = 0; inst < 100; ++inst) {
    Rng rng(500 + inst);
    const double mu = rng.Normal(0.0, 2.0), var = 0.2 + 2.0 * rng.Uniform();
    const double t = rng.Normal(0.0, 1.5);
    DiagGmm ubm(Vector::Ones(1), Matrix::Constant(1, 1, mu), Matrix::Constant(1, 1, var));
    TotalVariabilityModel model(ubm, Matrix::Constant(1, 1, t));
    const int J = 3 + inst % 6;
    std::vector<BaumWelchStats> stats;
    std::vector<double> ns, fs, ls, phis, phi2s;
    for (int j = 0; j < J; ++j) {
      const int frames = 5 + static_cast<int>(rng.Below(40));
      const double shift = rng.Normal();
      RowMatrix x(frames, 1);
      double n = 0.0, f = 0.0;
      for (int i = 0; i < frames; ++i) {
        x(i, 0) = mu + shift + std::sqrt(var) * rng.Normal();
        n += 1.0;
        f += x(i, 0) - mu;
      }
      stats.push_back(AccumulateBaumWelch(ubm, x));
      const double l = 1.0 + n * t * t / var;
      const double phi = t * f / var / l;
      const double phi2 = 1.0 / l + phi * phi;
      check(stats.back().counts[0], n);
      check(stats.back().first(0, 0), f);
      const IvectorPosterior p = ComputePosterior(model, stats.back());
      check(p.precision(0, 0), l);
      check(p.covariance(0, 0), 1.0 / l);
      check(p.mean[0], phi);
      check(p.second_moment(0, 0), phi2);
      ns.push_back(n);
      fs.push_back(f);
      phis.push_back(phi);
      phi2s.push_back(phi2);
    }
    double a = 0.0, c = 0.0, m = 0.0;
    for (int j = 0; j < J; ++j) {
      a += ns[j] * phi2s[j];
      c += fs[j] * phis[j];
      m += phi2s[j];
    }
    const double t_ml = c / a, p_inv = m / J, q = std::sqrt(p_inv);
    const TMatrixAccumulators acc = AccumulateTMatrix(model, stats);
    check(acc.weighted_moment[0](0, 0), a);
    check(acc.first_moment(0, 0), c);
    check(acc.moment(0, 0), m);
    const TMatrixUpdate up = UpdateTMatrix(model, acc);
    check(up.t_ml(0, 0), t_ml);
    check(up.prior_covariance(0, 0), p_inv);
    check(up.q(0, 0), q);
    check(up.t_md(0, 0), t_ml * q);
  }

  // Full training on stats drawn from a known total-variability model.
  Rng rng(42);
  const int g = 4, m = 3, r = 2;
  Matrix means(g, m), vars = Matrix::Ones(g, m);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < m; ++j) means(i, j) = rng.Normal(0.0, 3.0);
  DiagGmm ubm(Vector::Constant(g, 1.0 / g), means, vars);
  Matrix t_true(g * m, r);
  for (Eigen::Index i = 0; i < t_true.size(); ++i) t_true.data()[i] = rng.Normal();
  std::vector<BaumWelchStats> stats;
  for (int j = 0; j < 400; ++j) {
    Vector phi(r);
    for (int k = 0; k < r; ++k) phi[k] = rng.Normal();
    const Vector offset = t_true * phi;
    RowMatrix x(200, m);
    for (int i = 0; i < 200; ++i) {
      const int comp = static_cast<int>(rng.Below(g));
      for (int k = 0; k < m; ++k)
        x(i, k) = means(comp, k) + offset[comp * m + k] + rng.Normal();
    }
    stats.push_back(AccumulateBaumWelch(ubm, x));
  }
  TMatrixConfig cfg;
  cfg.ivector_dim = r;
  cfg.iterations = 20;
  cfg.seed = 9;
  const TMatrixTraining tr = TrainTMatrix(stats, ubm, cfg);
  const double moment_err =
      (tr.final_second_moment - Matrix::Identity(r, r)).cwiseAbs().maxCoeff();
  *d = Fmt("worst oracle error %.1e over 100 instances; second moment error %.4f",
           worst, moment_err);
  return worst <= 1e-12 && moment_err <= 0.05;
}

// 7. Discrete speaker-mean oracle against the closed form.
bool DiscreteConvergence(Detail* d) {
  double worst = 0.0;
  int passed = 0;
  for (int k = 0; k < 20; ++k) {
    Rng rng(9000 + k);
    const double mu_b = 2.0 * rng.Uniform() - 1.0;
    const double sw2 = 0.2 + 0.8 * rng.Uniform();
    const double sb2 = 0.5 + 1.5 * rng.Uniform();
    const double spread = std::sqrt(sb2 + sw2);
    const double vq = mu_b + spread * (2.0 * rng.Uniform() - 1.0);
    const double vk = mu_b + spread * (2.0 * rng.Uniform() - 1.0);
    std::vector<double> means(10000);
    for (double& v : means) v = rng.Normal(mu_b, std::sqrt(sb2));
    PldaModel closed(Vector::Constant(1, mu_b), Matrix::Constant(1, 1, sw2),
                     Matrix::Constant(1, 1, sb2));
    const double lr_closed = std::exp(closed.Score(Vector::Constant(1, vq),
                                                   Vector::Constant(1, vk)));
    const double lr_disc = std::exp(PldaDiscreteLogLr(means, sw2, vq, vk));
    const double rel = std::abs(lr_disc - lr_closed) / lr_closed;
    worst = std::max(worst, rel);
    passed += rel <= 0.05;
  }
  *d = Fmt("%d/20 settings within 5%%, worst rel %.4f", passed, worst);
  return passed == 20;
}

// 8. Feature pipeline invariants.
bool FeatureInvariants(Detail* d) {
  Rng rng(8);
  double dct_err = 0.0;
  for (int k = 0; k < 20; ++k) {
    std::vector<double> x(26);
    for (double& v : x) v = rng.Normal(0.0, 5.0);
    const std::vector<double> back = InverseDct(Dct(x));
    for (std::size_t i = 0; i < x.size(); ++i)
      dct_err = std::max(dct_err, std::abs(back[i] - x[i]));
  }

  std::vector<double> frame(512);
  for (double& v : frame) v = rng.Normal(0.0, 0.1);
  const std::vector<double> p = PowerSpectrum(frame);
  const std::size_t n = frame.size();
  double time = 0.0, freq = p[0] + p[n / 2];
  for (double v : frame) time += v * v;
  for (std::size_t k = 1; k < n / 2; ++k) freq += 2.0 * p[k];
  const double parseval = std::abs(time - freq / static_cast<double>(n)) / time;

  MfccConfig mc;
  MfccExtractor ex(mc, 16000);
  std::vector<double> f320(320), scaled(320);
  for (std::size_t i = 0; i < f320.size(); ++i) {
    f320[i] = 0.3 * std::sin(0.07 * i) + rng.Normal(0.0, 0.05);
    scaled[i] = 7.5 * f320[i];
  }
  const std::vector<double> c1 = ex.StaticCepstra(f320), c2 = ex.StaticCepstra(scaled);
  double gain_err = 0.0;
  for (std::size_t i = 0; i < c1.size(); ++i)
    gain_err = std::max(gain_err, std::abs(c1[i] - c2[i]));

  RowMatrix constant = RowMatrix::Constant(50, 4, 3.25);
  const RowMatrix deltas = Deltas(constant, 2);
  const bool zero_deltas = (deltas.array() == 0.0).all();

  FeatureMatrix track;
  track.vectors.resize(12000, 1);
  for (Eigen::Index i = 0; i < track.vectors.rows(); ++i)
    track.vectors(i, 0) = std::exp(rng.Normal());  // skewed input
  const FeatureMatrix warped = FeatureWarp(track);
  std::vector<double> w(warped.vectors.data(), warped.vectors.data() + warped.vectors.rows());
  std::sort(w.begin(), w.end());
  boost::math::normal_distribution<double> unit;
  double ks = 0.0, mean = 0.0, var = 0.0;
  const double count = static_cast<double>(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double cdf = boost::math::cdf(unit, w[i]);
    ks = std::max({ks, std::abs((i + 1) / count - cdf), std::abs(i / count - cdf)});
    mean += w[i];
  }
  mean /= count;
  for (double v : w) var += (v - mean) * (v - mean);
  var /= count;

  *d = Fmt("dct %.1e parseval %.1e gain %.1e deltas %s ks %.4f mean %.4f var %.4f",
           dct_err, parseval, gain_err, zero_deltas ? "zero" : "nonzero", ks, mean, var);
  return dct_err <= 1e-9 && parseval <= 1e-6 && c1.size() == 14 && gain_err <= 1e-6 &&
         zero_deltas && ks < 0.02 && std::abs(mean) < 0.05 && std::abs(var - 1.0) < 0.05;
}

struct RunResult {
  ValidationReport calibrated[2];
  ValidationReport uncalibrated[2];
  double seconds = 0.0;
};

const ScoringPath kPaths[2] = {ScoringPath::kGmmUbm, ScoringPath::kIvectorPlda};

RunResult FullRun(const fs::path& root, const nlohmann::json& fx) {
  fs::remove_all(root);
  fs::create_directories(root);
  const auto start = std::chrono::steady_clock::now();
  PipelineConfig config = ParseConfig(fx["config"].dump());
  config.seed = fx["seed"].get<uint64_t>();
  config.DeriveSeeds();

  GenCorpusOptions gen;
  gen.spec.seed = config.seed;
  gen.spec.frames_per_recording = fx["frames_per_recording"].get<int>();
  gen.population_speakers = fx["population_speakers"].get<int>();
  gen.calibration_speakers = fx["calibration_speakers"].get<int>();
  gen.test_speakers = fx["test_speakers"].get<int>();
  CmdGenCorpus(gen, root / "corpus");
  const Manifest manifest = LoadManifest(root / "corpus" / "manifest.csv");

  RunResult out;
  for (int p = 0; p < 2; ++p) {
    PipelineContext ctx{config, root / "models", root / "out"};
    ctx.config.path = kPaths[p];
    CmdExtract(manifest, ctx);
    CmdTrain(manifest, ctx);
    CmdCalibrate(manifest, ctx);
    out.calibrated[p] = CmdValidate(manifest, ctx, false);
    out.uncalibrated[p] = CmdValidate(manifest, ctx, true);
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

bool Monotone(const TippettCurves& c) {
  auto ordered = [](const std::vector<TippettPoint>& v, bool rising) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i].log10_lr < v[i - 1].log10_lr) return false;
      if (rising ? v[i].proportion < v[i - 1].proportion
                 : v[i].proportion > v[i - 1].proportion)
        return false;
    }
    return !v.empty();
  };
  return ordered(c.same, true) && ordered(c.diff, false);
}

// 9. End-to-end casework on the synthetic corpus.
bool EndToEnd(const RunResult& run, const nlohmann::json& fx, Detail* d) {
  const double bound = fx["cllr_bound"].get<double>();
  bool ok = run.seconds < 120.0;
  std::ostringstream os;
  for (int p = 0; p < 2; ++p) {
    const ValidationReport& cal = run.calibrated[p];
    const ValidationReport& unc = run.uncalibrated[p];
    const double gap = cal.tippett.GapAtHalf();
    ok = ok && cal.cllr < bound && unc.cllr > cal.cllr &&
         Monotone(cal.tippett) && Monotone(unc.tippett) && gap > 0.0;
    os << ScoringPathName(kPaths[p]) << Fmt(" cal %.4f uncal %.4f gap %.3f; ",
                                             cal.cllr, unc.cllr, gap);
  }
  os << Fmt("%.1f s", run.seconds);
  *d = os.str();
  return ok;
}

std::string Slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(is), {});
}

// 10. Two full runs give byte-identical artifacts.
bool Deterministic(const fs::path& a, const fs::path& b, Detail* d) {
  std::vector<fs::path> files;
  for (const char* dir : {"models", "out"})
    for (const auto& e : fs::recursive_directory_iterator(a / dir)) {
      if (!e.is_regular_file()) continue;
      const std::string ext = e.path().extension().string();
      if (ext == ".gmm" || ext == ".fvct" || ext == ".fvcb" || ext == ".txt" ||
          ext == ".csv" || ext == ".svg" || ext == ".fvcf" || ext == ".hdr")
        files.push_back(fs::relative(e.path(), a));
    }
  std::sort(files.begin(), files.end());
  int differ = 0, svg = 0, csv = 0;
  for (const fs::path& rel : files) {
    if (!fs::exists(b / rel) || Slurp(a / rel) != Slurp(b / rel)) {
      ++differ;
      spdlog::error("differs between runs: {}", rel.string());
    }
    svg += rel.extension() == ".svg";
    csv += rel.extension() == ".csv";
  }
  *d = Fmt("%zu files compared (%d csv, %d svg), %d differ", files.size(), csv, svg,
           differ);
  return differ == 0 && svg >= 4 && files.size() > 10;
}

}  // namespace
}  // namespace fvc

int main() {
  using namespace fvc;
  spdlog::set_level(spdlog::level::warn);
  SetNumThreads(1);
  int failed = 0;
  auto report = [&failed](int id, const char* name, const std::function<bool(Detail*)>& f) {
    Detail d;
    bool ok = false;
    try {
      ok = f(&d);
    } catch (const std::exception& e) {
      d = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, d.c_str());
    std::fflush(stdout);
    failed += !ok;
  };
  report(1, "plda worked example", PldaWorkedExample);
  report(2, "calibration worked example", CalibrationWorkedExample);
  report(3, "cllr reference points", CllrReferencePoints);
  report(4, "em properties", EmProperties);
  report(5, "map adaptation", MapEndpoints);
  report(6, "scalar i-vector oracle", ScalarIvectorOracle);
  report(7, "discrete plda convergence", DiscreteConvergence);
  report(8, "feature invariants", FeatureInvariants);

  const fs::path tmp = fs::path(FVC_TEST_TMPDIR) / "acceptance";
  nlohmann::json fx;
  RunResult first;
  bool have_runs = false;
  try {
    fx = LoadFixtures()["end_to_end"];
    first = FullRun(tmp / "run1", fx);
    FullRun(tmp / "run2", fx);
    have_runs = true;
  } catch (const std::exception& e) {
    spdlog::error("end-to-end run failed: {}", e.what());
  }
  report(9, "end-to-end synthetic casework", [&](Detail* d) {
    if (!have_runs) throw Error("pipeline run failed");
    return EndToEnd(first, fx, d);
  });
  report(10, "determinism", [&](Detail* d) {
    if (!have_runs) throw Error("pipeline run failed");
    return Deterministic(tmp / "run1", tmp / "run2", d);
  });
  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
