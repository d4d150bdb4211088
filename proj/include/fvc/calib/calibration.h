// fvc/include/fvc/calib/calibration.h

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

#ifndef FVC_CALIB_CALIBRATION_H_
#define FVC_CALIB_CALIBRATION_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fvc/base/error.h"

namespace fvc {

enum class CalibrationMethod { kPooledGaussian, kLogistic };
std::string_view CalibrationMethodName(CalibrationMethod m);
CalibrationMethod ParseCalibrationMethod(std::string_view name);

/// The training scores leave no overlap between classes, so the logistic
/// slope would grow without bound.
class PerfectSeparationError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// log LR = a + b * score (natural logs).
struct CalibrationModel {
  CalibrationMethod method = CalibrationMethod::kLogistic;
  double a = 0.0;
  double b = 0.0;
  // Class summary of the training scores.
  double mu_s = 0.0;
  double mu_d = 0.0;
  double sigma2 = 0.0;
  int64_t num_same = 0;
  int64_t num_diff = 0;
  int iterations = 0;  // logistic only
  std::string fingerprint;  // SHA-256 of the training scores
  std::map<std::string, std::string> extra;  // provenance fields

  double Apply(double score) const { return a + b * score; }
};

/// Class means, pooled within-class variance (divisor Ns + Nd),
/// b = (mu_s - mu_d) / sigma^2, a = -b (mu_s + mu_d) / 2.
CalibrationModel FitPooledGaussian(const std::vector<double>& same,
                                   const std::vector<double>& diff);

/// Ratio of the two class densities N(s; mu_s, sigma^2) / N(s; mu_d, sigma^2),
/// evaluated directly rather than through (a, b).
double PooledGaussianLr(const CalibrationModel& model, double score);

struct LogisticConfig {
  int max_iterations = 200;
  double gradient_tolerance = 1e-8;
};

/// Minimizes the prior-weighted binomial deviance (each trial weighted by
/// N / (2 N_class)) by Newton's method with step halving. Convergence is on
/// the gradient of the per-trial mean deviance. Throws
/// PerfectSeparationError when every same-speaker score exceeds every
/// different-speaker score.
CalibrationModel FitLogistic(const std::vector<double>& same,
                             const std::vector<double>& diff,
                             const LogisticConfig& config = {});

CalibrationModel FitCalibration(CalibrationMethod method,
                                const std::vector<double>& same,
                                const std::vector<double>& diff);

/// Weighted deviance per trial (natural log) of the map (a, b).
double WeightedDeviance(const std::vector<double>& same,
                        const std::vector<double>& diff, double a, double b);

/// SHA-256 of the scores printed one per line as "<label>,<%.17g>".
std::string ScoreFingerprint(const std::vector<double>& same,
                             const std::vector<double>& diff);

/// Human-readable "key: value" file.
void WriteCalibration(const std::filesystem::path& path, const CalibrationModel& m);
/// Throws FormatError for missing keys; Error if the file does not exist.
CalibrationModel ReadCalibration(const std::filesystem::path& path);

}  // namespace fvc

#endif  // FVC_CALIB_CALIBRATION_H_
