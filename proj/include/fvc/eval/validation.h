// fvc/include/fvc/eval/validation.h

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

#ifndef FVC_EVAL_VALIDATION_H_
#define FVC_EVAL_VALIDATION_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fvc {

/// Natural-log LRs of same-speaker and different-speaker test trials.
struct TrialSet {
  std::vector<double> same;
  std::vector<double> diff;
};

/// Log-likelihood-ratio cost in bits:
/// 0.5 (mean_s log2(1 + 1/LR) + mean_d log2(1 + LR)).
/// Throws InvalidArgument for an empty class or a non-finite log LR.
double ComputeCllr(const TrialSet& trials);

struct TippettPoint {
  double log10_lr;
  double proportion;
};

/// Step curves evaluated at each distinct value. The same-speaker curve is
/// the empirical CDF P(log LR <= x); the different-speaker curve is the
/// survival function P(log LR >= x). Both x axes are log10.
struct TippettCurves {
  std::vector<TippettPoint> same;
  std::vector<TippettPoint> diff;

  double SameAt(double log10_lr) const;
  double DiffAt(double log10_lr) const;
  /// log10 LR at which each curve crosses proportion 0.5, same minus diff.
  /// Positive when the same-speaker curve lies to the right.
  double GapAtHalf() const;
};

TippettCurves ComputeTippett(const TrialSet& trials);

struct ValidationReport {
  std::string system_id;
  double cllr = 0.0;
  int64_t num_same = 0;
  int64_t num_diff = 0;
  TippettCurves tippett;

  /// "Cllr=<value> Ns=<n> Nd=<n>".
  std::string Summary() const;
};

ValidationReport Validate(const TrialSet& trials, std::string system_id);

/// trials.csv (label,log_lr,log10_lr), tippett.csv (curve,log10_lr,proportion),
/// tippett.svg and summary.txt, all under dir.
void WriteValidationReport(const std::filesystem::path& dir, const TrialSet& trials,
                           const ValidationReport& report);

}  // namespace fvc

#endif  // FVC_EVAL_VALIDATION_H_
