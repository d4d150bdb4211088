// fvc/include/fvc/score/gmm-ubm-score.h

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

#ifndef FVC_SCORE_GMM_UBM_SCORE_H_
#define FVC_SCORE_GMM_UBM_SCORE_H_

#include <cstdint>

#include "fvc/base/types.h"
#include "fvc/feat/feature-matrix.h"
#include "fvc/gmm/diag-gmm.h"

namespace fvc {

/// Uncalibrated comparison score. It is a mean log likelihood ratio per
/// frame and must pass through calibration before being reported as an LR.
struct Score {
  double value = 0.0;
  int64_t num_frames = 0;
};

/// log p(x | speaker) - log p(x | UBM), natural log.
double FrameLlr(const DiagGmm& speaker, const DiagGmm& ubm,
                const Eigen::Ref<const Eigen::RowVectorXd>& x);

/// Mean of FrameLlr over every frame of the questioned recording.
Score ScoreRecording(const DiagGmm& speaker, const DiagGmm& ubm,
                     const RowMatrix& questioned);
Score ScoreRecording(const DiagGmm& speaker, const DiagGmm& ubm,
                     const FeatureMatrix& questioned);

}  // namespace fvc

#endif  // FVC_SCORE_GMM_UBM_SCORE_H_
