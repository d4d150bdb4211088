// fvc/include/fvc/pipeline/manifest.h

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

#ifndef FVC_PIPELINE_MANIFEST_H_
#define FVC_PIPELINE_MANIFEST_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fvc/base/error.h"

namespace fvc {

enum class Condition { kQuestionedLike, kKnownLike, kOther };
enum class Split { kUbm, kPopulation, kCalibration, kTest, kCase };

std::string_view ConditionName(Condition c);
Condition ParseCondition(std::string_view s);
std::string_view SplitName(Split s);
Split ParseSplit(std::string_view s);

/// A speaker appears in more than one of the population, calibration and
/// test splits.
class SplitHygieneError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct ManifestRow {
  std::filesystem::path recording_path;  // absolute after loading
  std::string speaker_id;
  Condition condition = Condition::kOther;
  Split split = Split::kPopulation;

  /// File stem; unique per distinct path within a manifest.
  std::string RecordingId() const { return recording_path.stem().string(); }
};

struct Manifest {
  std::vector<ManifestRow> rows;

  std::vector<ManifestRow> InSplit(Split s) const;
  /// Distinct recordings (by path) in first-appearance order.
  std::vector<ManifestRow> UniqueRecordings() const;
};

/// CSV with header "recording_path,speaker_id,condition,split". Relative
/// paths resolve against the manifest's directory. Checks that paths exist,
/// speaker ids are nonempty, recording ids are unambiguous and the split
/// hygiene rule holds.
Manifest LoadManifest(const std::filesystem::path& path);
void WriteManifest(const std::filesystem::path& path, const Manifest& m);

/// Throws SplitHygieneError naming the offending speakers.
void CheckSplitHygiene(const Manifest& m);

}  // namespace fvc

#endif  // FVC_PIPELINE_MANIFEST_H_
