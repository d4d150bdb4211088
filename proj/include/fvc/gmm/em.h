// fvc/include/fvc/gmm/em.h

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

#ifndef FVC_GMM_EM_H_
#define FVC_GMM_EM_H_

#include <cstdint>
#include <vector>

#include "fvc/base/types.h"
#include "fvc/gmm/diag-gmm.h"

namespace fvc {

struct EmConfig {
  int num_components = 1024;
  int max_iterations = 100;
  /// Stop once the mean per-frame log-likelihood improves by less than this.
  double convergence_threshold = 1e-5;
  /// Variances are floored at this fraction of the global data variance.
  double variance_floor_factor = 1e-3;
  uint64_t seed = 0;
};

/// Sufficient statistics of one E-step.
struct GmmStats {
  Vector occupancy;          // sum_i gamma_gi
  Matrix first;              // G x M, sum_i gamma_gi x_i
  Matrix second;             // G x M, sum_i gamma_gi x_i^2
  double log_likelihood = 0.0;
  Eigen::Index num_frames = 0;
  Eigen::Index worst_frame = -1;  // frame with the lowest log-likelihood
  double worst_log_likelihood = 0.0;
};

/// E-step over all frames. Frames are split into fixed-size blocks whose
/// partial sums are merged in block order, so the result is identical for
/// any thread count.
GmmStats AccumulateGmmStats(const DiagGmm& gmm, const RowMatrix& frames);

struct EmResult {
  DiagGmm gmm;
  /// Mean per-frame log-likelihood of the model after 0, 1, 2, ... M-steps;
  /// the last entry belongs to the returned model.
  std::vector<double> log_likelihood_trace;
  int iterations = 0;  // M-steps performed
  bool converged = false;
  int reseeded_components = 0;
};

/// k-means++ initialization followed by EM.
EmResult EmFit(const RowMatrix& data, const EmConfig& config);

/// EM from a given starting model.
EmResult EmFit(const RowMatrix& data, const DiagGmm& initial,
               const EmConfig& config);

}  // namespace fvc

#endif  // FVC_GMM_EM_H_
