// fvc/include/fvc/backend/plda.h

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

#ifndef FVC_BACKEND_PLDA_H_
#define FVC_BACKEND_PLDA_H_

#include <string>
#include <vector>

#include "fvc/backend/speaker-groups.h"
#include "fvc/base/binary-io.h"
#include "fvc/base/types.h"
#include "fvc/ivector/embedding.h"

namespace fvc {

/// Two-covariance model: speaker means ~ N(mu_b, Sigma_b), recordings of a
/// speaker ~ N(speaker mean, Sigma_w).
class PldaModel {
 public:
  PldaModel() = default;
  PldaModel(Vector mu_b, Matrix sigma_w, Matrix sigma_b);

  int Dim() const { return static_cast<int>(mu_b_.size()); }
  const Vector& mu_b() const { return mu_b_; }
  const Matrix& sigma_w() const { return sigma_w_; }
  const Matrix& sigma_b() const { return sigma_b_; }

  /// Natural-log LR of common source vs different sources.
  double Score(const Vector& v_q, const Vector& v_k) const;

 private:
  Vector mu_b_;
  Matrix sigma_w_;
  Matrix sigma_b_;
  // Cached factorizations of the 2D-block and marginal covariances.
  Eigen::LLT<Matrix> joint_;
  Eigen::LLT<Matrix> marginal_;
  double joint_logdet_ = 0.0;
  double marginal_logdet_ = 0.0;
};

/// Needs >= 2 speakers and at least one speaker with >= 2 embeddings.
/// Sigma_w is pooled over speakers with >= 2 embeddings (divisor: their
/// embedding count) and floored by 1e-8 * trace / D if not positive
/// definite; mu_b and Sigma_b are the mean and covariance (divisor S) of
/// the speaker means.
PldaModel FitPlda(const SpeakerGroups& groups);
PldaModel FitPlda(const std::vector<Embedding>& embeddings,
                  const std::vector<std::string>& speaker_ids);

/// Requires both embeddings at the cldf stage.
double PldaScore(const PldaModel& model, const Embedding& v_q,
                 const Embedding& v_k);

/// Scalar log LR from a finite set of speaker means: numerator averages
/// f(q|m_i) f(k|m_i); the denominator pairs f(k|m_i) with the mean of
/// f(q|m_j) over j != i.
double PldaDiscreteLogLr(const std::vector<double>& speaker_means,
                         double sigma_w2, double v_q, double v_k);

/// Scalar log LR with the speaker mean integrated out numerically over
/// mu_b +/- 10 sigma_b (adaptive Gauss-Kronrod).
double PldaIntegralLogLr(double mu_b, double sigma_w2, double sigma_b2,
                         double v_q, double v_k);

void WritePlda(BinaryWriter& w, const PldaModel& m);
PldaModel ReadPlda(BinaryReader& r);

}  // namespace fvc

#endif  // FVC_BACKEND_PLDA_H_
