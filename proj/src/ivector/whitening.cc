// fvc/src/ivector/whitening.cc

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

#include "fvc/ivector/whitening.h"

#include <cmath>

#include <spdlog/spdlog.h>

namespace fvc {

WhiteningTransform::WhiteningTransform(Vector mean, Matrix decorrelate,
                                       double condition_number)
    : mean_(std::move(mean)),
      decorrelate_(std::move(decorrelate)),
      condition_number_(condition_number) {
  if (decorrelate_.rows() != mean_.size() || decorrelate_.cols() != mean_.size())
    throw DimensionMismatch("whitening matrix does not match mean dimension");
  if (!mean_.allFinite() || !decorrelate_.allFinite())
    throw NumericalError("non-finite whitening transform");
}

Vector WhiteningTransform::Whiten(const Vector& x) const {
  if (x.size() != mean_.size())
    throw DimensionMismatch("embedding dim " + std::to_string(x.size()) +
                            " vs whitening dim " + std::to_string(mean_.size()));
  return decorrelate_ * (x - mean_);
}

Embedding WhiteningTransform::Apply(const Embedding& e) const {
  if (e.stage != EmbeddingStage::kRawIvector)
    throw InvalidArgument("whitening expects a raw_ivector embedding");
  if (e.values.size() == mean_.size() && (e.values - mean_).norm() == 0.0)
    throw ZeroNormError("embedding '" + e.recording_id +
                        "' equals the whitening mean; cannot length-normalize");
  Vector w = Whiten(e.values);
  const double norm = w.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw ZeroNormError("embedding '" + e.recording_id +
                        "' has zero norm after whitening");
  return Embedding{e.recording_id, w / norm, EmbeddingStage::kWhitened};
}

WhiteningTransform FitWhitening(const std::vector<Embedding>& training) {
  if (training.size() < 2)
    throw InvalidArgument("whitening needs at least 2 training embeddings");
  const Eigen::Index r = training.front().values.size();
  Matrix x(static_cast<Eigen::Index>(training.size()), r);
  for (std::size_t j = 0; j < training.size(); ++j) {
    if (training[j].values.size() != r)
      throw DimensionMismatch("training embeddings differ in dimension");
    x.row(static_cast<Eigen::Index>(j)) = training[j].values.transpose();
  }
  const Vector mean = x.colwise().mean().transpose();
  const Matrix centered = x.rowwise() - mean.transpose();
  Matrix cov = centered.transpose() * centered / static_cast<double>(x.rows());
  cov = 0.5 * (cov + cov.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  const double floor = 1e-6 * cov.trace() / static_cast<double>(r);
  Vector lambda = eig.eigenvalues();
  if (lambda.minCoeff() < floor) {
    if (!(floor > 0.0)) throw NumericalError("whitening covariance is zero");
    spdlog::warn("whitening covariance ill-conditioned (min eig {:.3g}); "
                 "adding {:.3g} to the diagonal", lambda.minCoeff(), floor);
    lambda.array() += floor;
  }
  const double cond = lambda.maxCoeff() / lambda.minCoeff();
  const Matrix w = eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal() *
                   eig.eigenvectors().transpose();
  return WhiteningTransform(mean, w, cond);
}

void WriteWhitening(BinaryWriter& w, const WhiteningTransform& t) {
  w.U32(static_cast<uint32_t>(t.Dim()));
  w.F64(t.condition_number());
  w.F64s(t.mean());
  w.F64s(t.decorrelate());
}

WhiteningTransform ReadWhitening(BinaryReader& r) {
  const Eigen::Index dim = r.U32();
  const double cond = r.F64();
  Vector mean = r.F64Vector(dim);
  Matrix w = r.F64Matrix(dim, dim);
  return WhiteningTransform(std::move(mean), std::move(w), cond);
}

}  // namespace fvc
