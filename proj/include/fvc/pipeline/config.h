// fvc/include/fvc/pipeline/config.h

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

#ifndef FVC_PIPELINE_CONFIG_H_
#define FVC_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "fvc/calib/calibration.h"
#include "fvc/feat/mfcc.h"
#include "fvc/feat/normalize.h"
#include "fvc/gmm/em.h"
#include "fvc/ivector/tv-model.h"

namespace fvc {

enum class ScoringPath { kGmmUbm, kIvectorPlda };
std::string_view ScoringPathName(ScoringPath p);
ScoringPath ParseScoringPath(std::string_view s);

/// Everything that determines a run. Stored as JSON; every artifact records
/// the hash of the canonical JSON form.
struct PipelineConfig {
  MfccConfig mfcc;
  double vad_threshold_db = 30.0;
  Compensation compensation = Compensation::kWarp;
  WarpConfig warp;
  EmConfig ubm;                        // ubm.seed is derived from seed
  double relevance_factor = 16.0;
  TMatrixConfig ivector;               // ivector.seed is derived from seed
  int cldf_dim = 0;                    // 0: min(50, speakers - 1, R)
  CalibrationMethod calibration = CalibrationMethod::kLogistic;
  ScoringPath path = ScoringPath::kGmmUbm;
  uint64_t seed = 0;

  /// Canonical JSON with sorted keys.
  std::string ToJson() const;
  /// SHA-256 of ToJson().
  std::string Hash() const;
  /// Hash of the feature-related part only (MFCC, VAD, compensation), used
  /// to decide whether extracted features are up to date.
  std::string FeatureHash() const;
  /// Seeds handed to the UBM and T-matrix trainers.
  void DeriveSeeds();
};

/// Unknown keys are rejected; missing keys keep their defaults.
PipelineConfig ParseConfig(std::string_view json_text);
PipelineConfig LoadConfig(const std::filesystem::path& path);

}  // namespace fvc

#endif  // FVC_PIPELINE_CONFIG_H_
