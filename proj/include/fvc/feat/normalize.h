// fvc/include/fvc/feat/normalize.h

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

#ifndef FVC_FEAT_NORMALIZE_H_
#define FVC_FEAT_NORMALIZE_H_

#include <string_view>

#include "fvc/feat/feature-matrix.h"

namespace fvc {

// Feature-domain channel compensation. All transforms act per dimension,
// on statics and deltas alike, and return a matrix tagged compensated.

/// Subtracts each dimension's mean over all frames.
FeatureMatrix Cms(const FeatureMatrix& features);

/// Mean and variance normalization (population variance). A dimension with
/// zero variance is set to zero and a warning is logged. Needs >= 2 frames.
FeatureMatrix Cmvn(const FeatureMatrix& features);

/// Sliding-window variants over t-half..t+half, truncated at the edges.
FeatureMatrix CmsWindowed(const FeatureMatrix& features, int half_window);
FeatureMatrix CmvnWindowed(const FeatureMatrix& features, int half_window);

struct WarpConfig {
  int half_window_frames = 150;  // 1.5 s each side at a 10 ms shift
};

/// Short-term feature warping onto N(0, 1). For frame t the window holds up
/// to 2*half+1 values (truncated at the edges); with rank r (1-based, ties
/// broken by frame order) among M window values the output is
/// NormalQuantile((r - 0.5) / M). Needs >= 2 frames.
FeatureMatrix FeatureWarp(const FeatureMatrix& features,
                          const WarpConfig& config = {});

enum class Compensation { kNone, kCms, kCmvn, kWarp };

Compensation ParseCompensation(std::string_view name);
std::string_view CompensationName(Compensation c);

/// kNone still retags the matrix as compensated, so training runs see one
/// stage only.
FeatureMatrix Compensate(const FeatureMatrix& features, Compensation method,
                         const WarpConfig& warp = {});

}  // namespace fvc

#endif  // FVC_FEAT_NORMALIZE_H_
