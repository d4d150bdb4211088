// fvc/src/score/gmm-ubm-score.cc

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

#include "fvc/score/gmm-ubm-score.h"

#include <cmath>

#include "fvc/base/error.h"

namespace fvc {

namespace {
void CheckShapes(const DiagGmm& speaker, const DiagGmm& ubm) {
  if (!speaker.SameShape(ubm))
    throw DimensionMismatch("speaker model and UBM differ in shape");
}
}  // namespace

double FrameLlr(const DiagGmm& speaker, const DiagGmm& ubm,
                const Eigen::Ref<const Eigen::RowVectorXd>& x) {
  CheckShapes(speaker, ubm);
  return speaker.LogDensity(x) - ubm.LogDensity(x);
}

Score ScoreRecording(const DiagGmm& speaker, const DiagGmm& ubm,
                     const RowMatrix& questioned) {
  CheckShapes(speaker, ubm);
  if (questioned.rows() == 0)
    throw InvalidArgument("cannot score an empty feature matrix");
  double total = 0.0;
  for (Eigen::Index i = 0; i < questioned.rows(); ++i)
    total += speaker.LogDensity(questioned.row(i)) -
             ubm.LogDensity(questioned.row(i));
  Score s{total / static_cast<double>(questioned.rows()), questioned.rows()};
  if (!std::isfinite(s.value)) throw NumericalError("non-finite GMM-UBM score");
  return s;
}

Score ScoreRecording(const DiagGmm& speaker, const DiagGmm& ubm,
                     const FeatureMatrix& questioned) {
  return ScoreRecording(speaker, ubm, questioned.vectors);
}

}  // namespace fvc
