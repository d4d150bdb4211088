// fvc/src/backend/cldf.cc

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

#include "fvc/backend/cldf.h"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "fvc/base/error.h"

namespace fvc {

namespace {
Vector MeanOf(const std::vector<Vector>& v) {
  Vector m = Vector::Zero(v.front().size());
  for (const Vector& x : v) m += x;
  return m / static_cast<double>(v.size());
}
}  // namespace

CldfTransform::CldfTransform(Vector mean, Matrix projection, Vector eigenvalues)
    : mean_(std::move(mean)),
      projection_(std::move(projection)),
      eigenvalues_(std::move(eigenvalues)) {
  if (projection_.rows() != mean_.size() || projection_.cols() < 1)
    throw DimensionMismatch("CLDF projection does not match its mean");
}

Vector CldfTransform::Apply(const Vector& x) const {
  if (x.size() != mean_.size())
    throw DimensionMismatch("CLDF input dim " + std::to_string(x.size()) +
                            ", expected " + std::to_string(mean_.size()));
  return projection_.transpose() * (x - mean_);
}

Embedding CldfTransform::Apply(const Embedding& e) const {
  return Embedding{e.recording_id, Apply(e.values), EmbeddingStage::kCldf};
}

Matrix WithinSpeakerScatter(const SpeakerGroups& groups) {
  const int r = groups.Dim();
  Matrix sw = Matrix::Zero(r, r);
  std::size_t n = 0;
  for (const auto& spk : groups.members) {
    const Vector m = MeanOf(spk);
    for (const Vector& x : spk) {
      sw += (x - m) * (x - m).transpose();
      ++n;
    }
  }
  return sw / static_cast<double>(n);
}

Matrix BetweenSpeakerScatter(const SpeakerGroups& groups) {
  const int r = groups.Dim();
  std::vector<Vector> means;
  for (const auto& spk : groups.members) means.push_back(MeanOf(spk));
  const Vector mb = MeanOf(means);
  Matrix sb = Matrix::Zero(r, r);
  for (const Vector& m : means) sb += (m - mb) * (m - mb).transpose();
  return sb / static_cast<double>(means.size());
}

CldfTransform FitCldf(const SpeakerGroups& groups, int d) {
  const int s = groups.NumSpeakers();
  if (s < 2) throw InvalidArgument("CLDF needs at least 2 speakers");
  for (std::size_t i = 0; i < groups.members.size(); ++i)
    if (groups.members[i].size() < 2)
      throw InvalidArgument("CLDF: speaker '" + groups.speakers[i] +
                            "' has fewer than 2 embeddings");
  const int r = groups.Dim();
  if (d <= 0) d = std::min({50, s - 1, r});
  if (d > std::min(r, s - 1))
    throw InvalidArgument("CLDF dimension " + std::to_string(d) +
                          " exceeds min(R, speakers - 1) = " +
                          std::to_string(std::min(r, s - 1)));

  Matrix sw = WithinSpeakerScatter(groups);
  const Matrix sb = BetweenSpeakerScatter(groups);
  const double reg = 1e-6 * sw.trace() / r;
  {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sw, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < reg) {
      spdlog::warn("CLDF within-speaker scatter is ill-conditioned; adding {:.3g}",
                   reg);
      sw.diagonal().array() += reg;
    }
  }
  Eigen::LLT<Matrix> llt(sw);
  if (!(reg > 0.0) || llt.info() != Eigen::Success)
    throw NumericalError("CLDF within-speaker scatter is singular");

  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(sb, sw);
  if (ges.info() != Eigen::Success)
    throw NumericalError("CLDF generalized eigenproblem failed");
  // Eigen returns ascending eigenvalues with u^t S_w u = 1.
  Matrix proj(r, d);
  Vector lambda(d);
  for (int c = 0; c < d; ++c) {
    proj.col(c) = ges.eigenvectors().col(r - 1 - c);
    lambda(c) = std::max(0.0, ges.eigenvalues()(r - 1 - c));
    Eigen::Index idx;
    proj.col(c).cwiseAbs().maxCoeff(&idx);
    if (proj(idx, c) < 0) proj.col(c) *= -1.0;
  }
  Vector mean = Vector::Zero(r);
  std::size_t n = 0;
  for (const auto& spk : groups.members)
    for (const Vector& x : spk) {
      mean += x;
      ++n;
    }
  mean /= static_cast<double>(n);
  return CldfTransform(std::move(mean), std::move(proj), std::move(lambda));
}

CldfTransform FitCldf(const std::vector<Embedding>& embeddings,
                      const std::vector<std::string>& speaker_ids, int d) {
  return FitCldf(GroupBySpeaker(embeddings, speaker_ids), d);
}

void WriteCldf(BinaryWriter& w, const CldfTransform& t) {
  w.U32(static_cast<uint32_t>(t.InputDim()));
  w.U32(static_cast<uint32_t>(t.OutputDim()));
  w.F64s(t.mean());
  w.F64s(t.projection());
  w.F64s(t.eigenvalues());
}

CldfTransform ReadCldf(BinaryReader& r) {
  const Eigen::Index in = r.U32(), out = r.U32();
  Vector mean = r.F64Vector(in);
  Matrix proj = r.F64Matrix(in, out);
  Vector lambda = r.F64Vector(out);
  return CldfTransform(std::move(mean), std::move(proj), std::move(lambda));
}

}  // namespace fvc
