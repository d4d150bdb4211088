// fvc/include/fvc/feat/feature-matrix.h

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

#ifndef FVC_FEAT_FEATURE_MATRIX_H_
#define FVC_FEAT_FEATURE_MATRIX_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fvc/audio/framing.h"
#include "fvc/base/binary-io.h"
#include "fvc/base/types.h"

namespace fvc {

enum class FeatureStage { kRaw, kCompensated };

std::string_view StageName(FeatureStage stage);
FeatureStage ParseStage(std::string_view name);

/// Per-recording feature vectors, one row per retained frame.
struct FeatureMatrix {
  RowMatrix vectors;
  Framing framing;
  /// Index of each row in the unmasked frame sequence. May be empty when
  /// the matrix was loaded from disk.
  std::vector<int64_t> frame_index;
  FeatureStage stage = FeatureStage::kRaw;

  Eigen::Index NumFrames() const { return vectors.rows(); }
  Eigen::Index Dim() const { return vectors.cols(); }
};

/// Binary layout: "FVCF", u32 version, u32 dims, u32 frames, then
/// frames x dims little-endian float32 row-major. Stage, framing and any
/// extra fields go to the ".hdr" sidecar.
void WriteFeatures(const std::filesystem::path& path, const FeatureMatrix& f,
                   const Sidecar& extra = {});
/// Throws FormatError on malformed input. The stage defaults to raw when
/// the sidecar is absent.
FeatureMatrix ReadFeatures(const std::filesystem::path& path);

}  // namespace fvc

#endif  // FVC_FEAT_FEATURE_MATRIX_H_
