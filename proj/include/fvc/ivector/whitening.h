// fvc/include/fvc/ivector/whitening.h

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

#ifndef FVC_IVECTOR_WHITENING_H_
#define FVC_IVECTOR_WHITENING_H_

#include <filesystem>
#include <vector>

#include "fvc/base/binary-io.h"
#include "fvc/base/error.h"
#include "fvc/base/types.h"
#include "fvc/ivector/embedding.h"

namespace fvc {

/// Raised when an embedding coincides with the training mean, so length
/// normalization has no direction to keep.
class ZeroNormError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Radial Gaussianization (centering plus inverse principal square root of
/// the training covariance) followed by length normalization.
class WhiteningTransform {
 public:
  WhiteningTransform() = default;
  WhiteningTransform(Vector mean, Matrix decorrelate, double condition_number);

  int Dim() const { return static_cast<int>(mean_.size()); }
  const Vector& mean() const { return mean_; }
  const Matrix& decorrelate() const { return decorrelate_; }
  /// Condition number of the covariance actually inverted.
  double condition_number() const { return condition_number_; }

  /// W (x - mean), without length normalization.
  Vector Whiten(const Vector& x) const;
  /// Whiten and scale to unit norm; throws ZeroNormError.
  Embedding Apply(const Embedding& e) const;

 private:
  Vector mean_;
  Matrix decorrelate_;
  double condition_number_ = 1.0;
};

/// Needs at least two embeddings. The covariance (divisor N) gets
/// 1e-6 * trace / R on its diagonal only when its smallest eigenvalue falls
/// below that level.
WhiteningTransform FitWhitening(const std::vector<Embedding>& training);

void WriteWhitening(BinaryWriter& w, const WhiteningTransform& t);
WhiteningTransform ReadWhitening(BinaryReader& r);

}  // namespace fvc

#endif  // FVC_IVECTOR_WHITENING_H_
