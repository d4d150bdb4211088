// fvc/include/fvc/pipeline/pipeline.h

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

#ifndef FVC_PIPELINE_PIPELINE_H_
#define FVC_PIPELINE_PIPELINE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fvc/backend/cldf.h"
#include "fvc/backend/plda.h"
#include "fvc/calib/calibration.h"
#include "fvc/eval/validation.h"
#include "fvc/feat/feature-matrix.h"
#include "fvc/gmm/diag-gmm.h"
#include "fvc/ivector/tv-model.h"
#include "fvc/ivector/whitening.h"
#include "fvc/pipeline/config.h"
#include "fvc/pipeline/manifest.h"
#include "fvc/synth/synthetic.h"

namespace fvc {

/// Raised by compare/validate when no calibration model exists for the
/// selected path. The tool does not report uncalibrated scores as LRs.
class MissingCalibrationError : public Error {
 public:
  using Error::Error;
};

struct PipelineContext {
  PipelineConfig config;
  std::filesystem::path models_dir;
  std::filesystem::path out_dir;  // features/, calibration/, validation/
};

/// Reads a recording and returns compensated features. WAV files go through
/// VAD (a "<stem>.vad" segment file next to the audio overrides the energy
/// detector), MFCC extraction and compensation; feature files written by
/// this tool are compensated unless already at the compensated stage.
FeatureMatrix ComputeFeatures(const std::filesystem::path& recording,
                              const PipelineConfig& config);

/// Compensated features for a manifest row: taken from
/// <out_dir>/features when up to date, otherwise computed (and not cached).
FeatureMatrix LoadFeatures(const ManifestRow& row, const PipelineContext& ctx);

struct ExtractReport {
  int written = 0;
  int skipped = 0;  // already up to date
  std::vector<std::string> failures;  // "<path>: <message>"
};

/// One feature file per distinct recording plus features/index.csv.
/// Failures are collected and the run continues.
ExtractReport CmdExtract(const Manifest& manifest, const PipelineContext& ctx);

/// Models persisted under models_dir.
struct Models {
  DiagGmm ubm;
  std::optional<TotalVariabilityModel> tv;
  std::optional<WhiteningTransform> whitening;
  std::optional<CldfTransform> cldf;
  std::optional<PldaModel> plda;
};

/// Trains the UBM on the ubm split and then the configured path: MAP models
/// for case-split known-like recordings (gmm-ubm), or T-matrix, whitening,
/// CLDF and PLDA on the population split (ivector-plda).
void CmdTrain(const Manifest& manifest, const PipelineContext& ctx);

/// Loads the models for the configured path; warns when an artifact was
/// produced under a different config hash.
Models LoadModels(const PipelineContext& ctx);

/// One questioned-like x known-like trial.
struct Trial {
  std::string questioned_id;
  std::string known_id;
  bool same_speaker = false;
  double score = 0.0;
  int64_t num_frames = 0;  // questioned frames
};

/// All questioned-like x known-like pairs of the given rows, scored with the
/// configured path.
std::vector<Trial> ScoreCrossConditionPairs(const std::vector<ManifestRow>& rows,
                                            const Models& models,
                                            const PipelineContext& ctx);

std::filesystem::path CalibrationPath(const PipelineContext& ctx);

/// Scores the calibration split, fits the configured calibration method and
/// writes it to CalibrationPath(); scores go to out_dir/calibration/<path>.
CalibrationModel CmdCalibrate(const Manifest& manifest, const PipelineContext& ctx);

struct CompareResult {
  double score = 0.0;
  double log_lr = 0.0;    // natural log
  double log10_lr = 0.0;
  double lr = 0.0;
  std::vector<std::pair<std::string, std::string>> provenance;

  std::string Format() const;
};

/// Throws MissingCalibrationError if the path has no calibration model.
CompareResult CmdCompare(const std::filesystem::path& questioned,
                         const std::filesystem::path& known, const PipelineContext& ctx);

/// Scores every cross-condition test pair, applies calibration (or, when
/// uncalibrated, treats raw scores as natural-log LRs) and writes scores.csv
/// plus the report files to out_dir/validation/<path>[-uncalibrated].
ValidationReport CmdValidate(const Manifest& manifest, const PipelineContext& ctx,
                             bool uncalibrated);

struct GenCorpusOptions {
  FeatureCorpusSpec spec;  // num_speakers is overwritten by the split sizes
  int population_speakers = 20;
  int calibration_speakers = 10;
  int test_speakers = 10;
  /// List population recordings a second time under the ubm split.
  bool population_as_ubm = true;
};

/// Writes raw-stage feature files to out_dir/corpus and out_dir/manifest.csv.
Manifest CmdGenCorpus(const GenCorpusOptions& options,
                      const std::filesystem::path& out_dir);

}  // namespace fvc

#endif  // FVC_PIPELINE_PIPELINE_H_
