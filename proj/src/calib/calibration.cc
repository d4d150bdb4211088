// fvc/src/calib/calibration.cc

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

#include "fvc/calib/calibration.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <spdlog/spdlog.h>

#include "fvc/base/hash.h"

namespace fvc {

namespace {

void CheckClasses(const std::vector<double>& same, const std::vector<double>& diff) {
  if (same.size() < 2 || diff.size() < 2)
    throw InvalidArgument("calibration needs at least 2 scores per class (got " +
                          std::to_string(same.size()) + " same, " +
                          std::to_string(diff.size()) + " different)");
  for (double s : same)
    if (!std::isfinite(s)) throw InvalidArgument("non-finite same-speaker score");
  for (double s : diff)
    if (!std::isfinite(s)) throw InvalidArgument("non-finite different-speaker score");
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// log(1 + e^x) without overflow.
double Softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::string Fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Summarize(CalibrationModel& m, const std::vector<double>& same,
               const std::vector<double>& diff) {
  m.mu_s = Mean(same);
  m.mu_d = Mean(diff);
  double ss = 0.0;
  for (double x : same) ss += (x - m.mu_s) * (x - m.mu_s);
  for (double x : diff) ss += (x - m.mu_d) * (x - m.mu_d);
  m.sigma2 = ss / static_cast<double>(same.size() + diff.size());
  m.num_same = static_cast<int64_t>(same.size());
  m.num_diff = static_cast<int64_t>(diff.size());
  m.fingerprint = ScoreFingerprint(same, diff);
}

}  // namespace

std::string_view CalibrationMethodName(CalibrationMethod m) {
  return m == CalibrationMethod::kPooledGaussian ? "pooled_gaussian" : "logistic";
}

CalibrationMethod ParseCalibrationMethod(std::string_view name) {
  if (name == "pooled_gaussian") return CalibrationMethod::kPooledGaussian;
  if (name == "logistic") return CalibrationMethod::kLogistic;
  throw InvalidArgument("unknown calibration method '" + std::string(name) + "'");
}

CalibrationModel FitPooledGaussian(const std::vector<double>& same,
                                   const std::vector<double>& diff) {
  CheckClasses(same, diff);
  CalibrationModel m;
  m.method = CalibrationMethod::kPooledGaussian;
  Summarize(m, same, diff);
  if (!(m.sigma2 > 0.0)) throw NumericalError("pooled score variance is zero");
  m.b = (m.mu_s - m.mu_d) / m.sigma2;
  m.a = -m.b * (m.mu_s + m.mu_d) / 2.0;
  return m;
}

double PooledGaussianLr(const CalibrationModel& model, double score) {
  if (!(model.sigma2 > 0.0)) throw InvalidArgument("model has no pooled variance");
  const double k = 1.0 / std::sqrt(2.0 * std::numbers::pi * model.sigma2);
  const double ds = score - model.mu_s, dd = score - model.mu_d;
  const double fs = k * std::exp(-ds * ds / (2.0 * model.sigma2));
  const double fd = k * std::exp(-dd * dd / (2.0 * model.sigma2));
  return fs / fd;
}

double WeightedDeviance(const std::vector<double>& same,
                        const std::vector<double>& diff, double a, double b) {
  const double n = static_cast<double>(same.size() + diff.size());
  const double ws = n / (2.0 * static_cast<double>(same.size()));
  const double wd = n / (2.0 * static_cast<double>(diff.size()));
  double total = 0.0;
  for (double s : same) total += ws * Softplus(-(a + b * s));
  for (double s : diff) total += wd * Softplus(a + b * s);
  return 2.0 * total / n;
}

CalibrationModel FitLogistic(const std::vector<double>& same,
                             const std::vector<double>& diff,
                             const LogisticConfig& config) {
  CheckClasses(same, diff);
  const double max_diff = *std::max_element(diff.begin(), diff.end());
  const double min_same = *std::min_element(same.begin(), same.end());
  if (max_diff < min_same)
    throw PerfectSeparationError(
        "calibration scores are perfectly separated (max different-speaker " +
        Fmt(max_diff) + " < min same-speaker " + Fmt(min_same) +
        "); more calibration data is needed");

  const double n = static_cast<double>(same.size() + diff.size());
  const double ws = n / (2.0 * static_cast<double>(same.size()));
  const double wd = n / (2.0 * static_cast<double>(diff.size()));

  // Gradient and Hessian of the mean weighted deviance / 2.
  auto derivatives = [&](double a, double b, Eigen::Vector2d& g, Eigen::Matrix2d& h) {
    g.setZero();
    h.setZero();
    auto add = [&](double s, double y, double w) {
      const double p = Sigmoid(a + b * s);
      const double r = w * (p - y);
      const double c = w * p * (1.0 - p);
      g += r * Eigen::Vector2d(1.0, s);
      h += c * Eigen::Vector2d(1.0, s) * Eigen::RowVector2d(1.0, s);
    };
    for (double s : same) add(s, 1.0, ws);
    for (double s : diff) add(s, 0.0, wd);
    g /= n;
    h /= n;
  };

  CalibrationModel m;
  m.method = CalibrationMethod::kLogistic;
  Summarize(m, same, diff);
  double a = 0.0, b = 0.0;
  double loss = WeightedDeviance(same, diff, a, b);
  Eigen::Vector2d g;
  Eigen::Matrix2d h;
  for (int iter = 0;; ++iter) {
    derivatives(a, b, g, h);
    if (g.norm() < config.gradient_tolerance) {
      m.iterations = iter;
      break;
    }
    if (iter == config.max_iterations)
      throw NumericalError("logistic calibration did not converge in " +
                           std::to_string(config.max_iterations) +
                           " iterations (gradient norm " + Fmt(g.norm()) + ")");
    Eigen::Vector2d step;
    Eigen::LDLT<Eigen::Matrix2d> ldlt(h);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive() &&
        ldlt.vectorD().minCoeff() > 1e-300)
      step = -ldlt.solve(g);
    else
      step = -g;
    double t = 1.0;
    bool moved = false;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      const double na = a + t * step(0), nb = b + t * step(1);
      const double nl = WeightedDeviance(same, diff, na, nb);
      // Near the optimum the decrease falls below rounding of the loss sum;
      // tolerate that so the Newton step can finish the job.
      if (nl <= loss + 1e-13 * std::max(1.0, std::abs(loss))) {
        a = na;
        b = nb;
        loss = nl;
        moved = true;
        break;
      }
    }
    if (!moved) {
      // No representable decrease; the gradient is at rounding level.
      spdlog::debug("logistic calibration: line search stalled at |g| = {}", g.norm());
      m.iterations = iter;
      break;
    }
  }
  m.a = a;
  m.b = b;
  return m;
}

CalibrationModel FitCalibration(CalibrationMethod method,
                                const std::vector<double>& same,
                                const std::vector<double>& diff) {
  return method == CalibrationMethod::kPooledGaussian ? FitPooledGaussian(same, diff)
                                                      : FitLogistic(same, diff);
}

std::string ScoreFingerprint(const std::vector<double>& same,
                             const std::vector<double>& diff) {
  std::string text;
  for (double s : same) text += "same," + Fmt(s) + "\n";
  for (double s : diff) text += "diff," + Fmt(s) + "\n";
  return Sha256Hex(text);
}

void WriteCalibration(const std::filesystem::path& path, const CalibrationModel& m) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  os << "# fvc calibration model: log LR = a + b * score (natural log)\n";
  os << "method: " << CalibrationMethodName(m.method) << "\n";
  os << "a: " << Fmt(m.a) << "\n";
  os << "b: " << Fmt(m.b) << "\n";
  os << "mu_s: " << Fmt(m.mu_s) << "\n";
  os << "mu_d: " << Fmt(m.mu_d) << "\n";
  os << "sigma2: " << Fmt(m.sigma2) << "\n";
  os << "num_same: " << m.num_same << "\n";
  os << "num_diff: " << m.num_diff << "\n";
  os << "iterations: " << m.iterations << "\n";
  os << "scores_sha256: " << m.fingerprint << "\n";
  for (const auto& [k, v] : m.extra) os << k << ": " << v << "\n";
}

CalibrationModel ReadCalibration(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("calibration model not found: " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(": ");
    if (colon == std::string::npos)
      throw FormatError(path.string() + ": malformed line '" + line + "'");
    kv[line.substr(0, colon)] = line.substr(colon + 2);
  }
  auto take = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw FormatError(path.string() + ": missing '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  CalibrationModel m;
  try {
    m.method = ParseCalibrationMethod(take("method"));
    m.a = std::stod(take("a"));
    m.b = std::stod(take("b"));
    m.mu_s = std::stod(take("mu_s"));
    m.mu_d = std::stod(take("mu_d"));
    m.sigma2 = std::stod(take("sigma2"));
    m.num_same = std::stoll(take("num_same"));
    m.num_diff = std::stoll(take("num_diff"));
    m.iterations = std::stoi(take("iterations"));
  } catch (const std::logic_error& e) {
    throw FormatError(path.string() + ": bad numeric field (" + e.what() + ")");
  }
  m.fingerprint = take("scores_sha256");
  m.extra = std::move(kv);
  if (!std::isfinite(m.a) || !std::isfinite(m.b))
    throw FormatError(path.string() + ": non-finite calibration parameters");
  return m;
}

}  // namespace fvc
