// fvc/include/fvc/ivector/tv-model.h

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

#ifndef FVC_IVECTOR_TV_MODEL_H_
#define FVC_IVECTOR_TV_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "fvc/base/binary-io.h"
#include "fvc/base/types.h"
#include "fvc/gmm/diag-gmm.h"
#include "fvc/ivector/baum-welch.h"
#include "fvc/ivector/embedding.h"

namespace fvc {

/// Total-variability model: supervector s = m + T v, with T stored as G
/// stacked M x R blocks ((G*M) x R) and the UBM providing m and Sigma.
class TotalVariabilityModel {
 public:
  TotalVariabilityModel() = default;
  TotalVariabilityModel(DiagGmm ubm, Matrix t);

  int NumComponents() const { return ubm_.NumComponents(); }
  int FeatureDim() const { return ubm_.Dim(); }
  int IvectorDim() const { return static_cast<int>(t_.cols()); }
  const DiagGmm& ubm() const { return ubm_; }
  const Matrix& t() const { return t_; }
  auto Block(int g) const {
    return t_.middleRows(static_cast<Eigen::Index>(g) * FeatureDim(), FeatureDim());
  }
  /// T_g^t Sigma_g^-1 T_g, cached per component.
  const Matrix& BlockPrecision(int g) const { return block_precision_[g]; }
  /// Diagonal of Sigma^-1 in supervector order.
  const Vector& InverseVarianceSupervector() const { return inv_var_; }

 private:
  DiagGmm ubm_;
  Matrix t_;
  Vector inv_var_;
  std::vector<Matrix> block_precision_;
};

/// Posterior of the latent factor for one recording.
struct IvectorPosterior {
  Matrix precision;      // L = I + sum_g n_g T_g^t Sigma_g^-1 T_g
  Matrix covariance;     // L^-1
  Vector mean;           // <phi> = L^-1 sum_g T_g^t Sigma_g^-1 f_g
  Matrix second_moment;  // <phi phi^t> = L^-1 + <phi><phi>^t
};

/// Throws NumericalError if L cannot be factorized.
IvectorPosterior ComputePosterior(const TotalVariabilityModel& model,
                                  const BaumWelchStats& stats);

/// Sums over recordings needed by the T update.
struct TMatrixAccumulators {
  std::vector<Matrix> weighted_moment;  // per g: sum_j n_gj <phi phi^t>
  Matrix first_moment;                  // (G*M) x R: sum_j f_j <phi>^t
  Matrix moment;                        // sum_j <phi phi^t>
  int num_recordings = 0;
};

TMatrixAccumulators AccumulateTMatrix(const TotalVariabilityModel& model,
                                      const std::vector<BaumWelchStats>& stats);

struct TMatrixUpdate {
  Matrix t_ml;              // maximum-likelihood T, block by block
  Matrix prior_covariance;  // P^-1 = (1/J) sum_j <phi phi^t>
  Matrix q;                 // principal square root of P^-1
  Matrix t_md;              // T_ml Q (minimum divergence)
};

/// M-step T_g = (sum_j f_gj <phi>^t)(sum_j n_gj <phi phi^t>)^-1 followed by
/// the minimum-divergence rescaling. Blocks whose occupancy is zero over
/// the whole training set keep their previous value.
TMatrixUpdate UpdateTMatrix(const TotalVariabilityModel& model,
                            const TMatrixAccumulators& acc);

struct TMatrixConfig {
  int ivector_dim = 400;
  int iterations = 5;
  bool minimum_divergence = true;
  uint64_t seed = 0;
};

struct TMatrixTraining {
  TotalVariabilityModel model;
  std::vector<double> frobenius_change;  // ||T_new - T_old||_F per iteration
  /// (1/J) sum_j (L_j^-1 + <phi_j><phi_j>^t) under the final T.
  Matrix final_second_moment;
};

/// T initialized from seeded standard-normal draws, then EM + minimum
/// divergence for the configured number of iterations.
TMatrixTraining TrainTMatrix(const std::vector<BaumWelchStats>& stats,
                             const DiagGmm& ubm, const TMatrixConfig& config);

/// Posterior mean under the model; stage raw_ivector.
Embedding ExtractIvector(const TotalVariabilityModel& model,
                         const BaumWelchStats& stats);

/// "FVCT", u32 version, UBM (as in the GMM file), u32 R, T (f64 row-major).
void WriteTvModel(const std::filesystem::path& path,
                  const TotalVariabilityModel& model, const Sidecar& extra = {});
TotalVariabilityModel ReadTvModel(const std::filesystem::path& path);

}  // namespace fvc

#endif  // FVC_IVECTOR_TV_MODEL_H_
