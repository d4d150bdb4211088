// fvc/include/fvc/ivector/pca-supervector.h

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

#ifndef FVC_IVECTOR_PCA_SUPERVECTOR_H_
#define FVC_IVECTOR_PCA_SUPERVECTOR_H_

#include <string>
#include <vector>

#include "fvc/base/types.h"
#include "fvc/gmm/diag-gmm.h"
#include "fvc/ivector/embedding.h"

namespace fvc {

/// Principal-component projection of mean supervectors of MAP-adapted GMMs,
/// centered on the UBM supervector.
class PcaSupervector {
 public:
  PcaSupervector() = default;
  PcaSupervector(Vector ubm_supervector, Matrix components, Vector variances);

  int Dim() const { return static_cast<int>(components_.cols()); }
  const Matrix& components() const { return components_; }      // (G*M) x R
  const Vector& explained_variance() const { return variances_; }

  /// components^t (s - m), stage raw_ivector.
  Embedding Project(const DiagGmm& adapted, std::string recording_id) const;
  Vector Project(const Vector& supervector) const;

 private:
  Vector ubm_supervector_;
  Matrix components_;
  Vector variances_;
};

/// Throws InvalidArgument when an adapted model differs from the UBM in
/// shape, weights or variances, and when R exceeds the numerical rank of
/// the centered training supervectors.
PcaSupervector FitPcaSupervector(const DiagGmm& ubm,
                                 const std::vector<DiagGmm>& adapted, int r);

}  // namespace fvc

#endif  // FVC_IVECTOR_PCA_SUPERVECTOR_H_
