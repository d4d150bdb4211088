// fvc/include/fvc/gmm/diag-gmm.h

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

#ifndef FVC_GMM_DIAG_GMM_H_
#define FVC_GMM_DIAG_GMM_H_

#include <filesystem>

#include "fvc/base/binary-io.h"
#include "fvc/base/types.h"

namespace fvc {

/// Gaussian mixture with diagonal covariances. Means and variances are
/// stored one component per row (G x M). Immutable once built; used both as
/// the UBM and as MAP-adapted speaker models.
class DiagGmm {
 public:
  DiagGmm() = default;
  /// Throws InvalidArgument when the weights do not sum to one, a weight is
  /// negative, a variance is not positive or the shapes disagree.
  DiagGmm(Vector weights, Matrix means, Matrix variances);

  int NumComponents() const { return static_cast<int>(weights_.size()); }
  int Dim() const { return static_cast<int>(means_.cols()); }
  const Vector& weights() const { return weights_; }
  const Matrix& means() const { return means_; }
  const Matrix& variances() const { return variances_; }

  /// Natural-log density of x, via log-sum-exp over components.
  double LogDensity(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;

  /// log(w_g) + log N(x | mu_g, Sigma_g) for every component.
  Vector ComponentLogLikelihoods(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;

  /// Batch form: N x G matrix, one row per frame.
  Matrix ComponentLogLikelihoods(const RowMatrix& frames) const;

  bool SameShape(const DiagGmm& other) const {
    return NumComponents() == other.NumComponents() && Dim() == other.Dim();
  }

  /// Supervector of stacked means (component-major), length G*M.
  Vector MeanSupervector() const;

  /// Returns a copy with the given means; weights and variances unchanged.
  DiagGmm WithMeans(Matrix means) const;

 private:
  void Precompute();
  Vector weights_;
  Matrix means_;
  Matrix variances_;
  Matrix inv_variances_;
  Vector log_consts_;  // log w_g - 0.5 (M log 2pi + sum log var)
};

/// Per-frame component posteriors.
struct Responsibilities {
  Matrix gamma;                 // N x G, rows sum to one
  Vector frame_log_likelihood;  // log density of each frame
};

Responsibilities ComputeResponsibilities(const DiagGmm& gmm,
                                         const RowMatrix& frames);

/// Binary layout: "FVCG", u32 version, u32 G, u32 M, then weights, means and
/// variances as little-endian float64 (means/variances row-major).
void WriteGmm(const std::filesystem::path& path, const DiagGmm& gmm,
              const Sidecar& extra = {});
DiagGmm ReadGmm(const std::filesystem::path& path);
void WriteGmm(BinaryWriter& w, const DiagGmm& gmm);
DiagGmm ReadGmm(BinaryReader& r);

/// log(sum(exp(v))) without overflow; -inf for an all -inf input.
double LogSumExp(const Eigen::Ref<const Vector>& v);

}  // namespace fvc

#endif  // FVC_GMM_DIAG_GMM_H_
