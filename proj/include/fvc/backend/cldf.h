// fvc/include/fvc/backend/cldf.h

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

#ifndef FVC_BACKEND_CLDF_H_
#define FVC_BACKEND_CLDF_H_

#include <string>
#include <vector>

#include "fvc/backend/speaker-groups.h"
#include "fvc/base/binary-io.h"
#include "fvc/base/types.h"
#include "fvc/ivector/embedding.h"

namespace fvc {

/// Canonical linear discriminant functions: directions u solving
/// S_b u = lambda S_w u, scaled so that u^t S_w u = 1.
class CldfTransform {
 public:
  CldfTransform() = default;
  CldfTransform(Vector mean, Matrix projection, Vector eigenvalues);

  int InputDim() const { return static_cast<int>(projection_.rows()); }
  int OutputDim() const { return static_cast<int>(projection_.cols()); }
  const Vector& mean() const { return mean_; }
  const Matrix& projection() const { return projection_; }  // R x D
  const Vector& eigenvalues() const { return eigenvalues_; }  // descending

  /// projection^t (x - mean).
  Vector Apply(const Vector& x) const;
  Embedding Apply(const Embedding& e) const;

 private:
  Vector mean_;
  Matrix projection_;
  Vector eigenvalues_;
};

/// Within-speaker scatter (S_w) pooled over all embeddings, divisor N.
Matrix WithinSpeakerScatter(const SpeakerGroups& groups);
/// Covariance of the speaker means, divisor S.
Matrix BetweenSpeakerScatter(const SpeakerGroups& groups);

/// d <= 0 selects min(50, S - 1, R). Needs >= 2 speakers with >= 2 embeddings
/// each and d <= min(R, S - 1).
CldfTransform FitCldf(const SpeakerGroups& groups, int d = 0);
CldfTransform FitCldf(const std::vector<Embedding>& embeddings,
                      const std::vector<std::string>& speaker_ids, int d = 0);

void WriteCldf(BinaryWriter& w, const CldfTransform& t);
CldfTransform ReadCldf(BinaryReader& r);

}  // namespace fvc

#endif  // FVC_BACKEND_CLDF_H_
