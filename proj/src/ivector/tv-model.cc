// fvc/src/ivector/tv-model.cc

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

#include "fvc/ivector/tv-model.h"

#include <cmath>
#include <fstream>
#include <string>

#include <spdlog/spdlog.h>

#include "fvc/base/error.h"
#include "fvc/base/parallel.h"
#include "fvc/base/random.h"

namespace fvc {

namespace {
constexpr std::string_view kTvMagic = "FVCT";
constexpr uint32_t kTvVersion = 1;

Matrix PrincipalSqrt(const Matrix& spd) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(spd);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0)
    throw NumericalError("prior covariance is not positive definite");
  return eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().asDiagonal() *
         eig.eigenvectors().transpose();
}

void CheckStats(const TotalVariabilityModel& model, const BaumWelchStats& s) {
  if (s.NumComponents() != model.NumComponents() || s.Dim() != model.FeatureDim())
    throw DimensionMismatch("stats '" + s.recording_id +
                            "' do not match the T-matrix shape");
}
}  // namespace

TotalVariabilityModel::TotalVariabilityModel(DiagGmm ubm, Matrix t)
    : ubm_(std::move(ubm)), t_(std::move(t)) {
  const Eigen::Index super = static_cast<Eigen::Index>(NumComponents()) * FeatureDim();
  if (t_.rows() != super)
    throw DimensionMismatch("T has " + std::to_string(t_.rows()) +
                            " rows, expected G*M = " + std::to_string(super));
  if (t_.cols() < 1 || t_.cols() > super)
    throw InvalidArgument("i-vector dim must be in [1, G*M]");
  if (!t_.allFinite()) throw NumericalError("T contains non-finite entries");
  inv_var_.resize(super);
  block_precision_.resize(static_cast<std::size_t>(NumComponents()));
  for (int g = 0; g < NumComponents(); ++g) {
    const Vector iv = ubm_.variances().row(g).transpose().cwiseInverse();
    inv_var_.segment(static_cast<Eigen::Index>(g) * FeatureDim(), FeatureDim()) = iv;
    block_precision_[static_cast<std::size_t>(g)] =
        Block(g).transpose() * iv.asDiagonal() * Block(g);
  }
}

IvectorPosterior ComputePosterior(const TotalVariabilityModel& model,
                                  const BaumWelchStats& stats) {
  CheckStats(model, stats);
  const int r = model.IvectorDim();
  IvectorPosterior post;
  post.precision = Matrix::Identity(r, r);
  for (int g = 0; g < model.NumComponents(); ++g)
    if (stats.counts[g] != 0.0)
      post.precision += stats.counts[g] * model.BlockPrecision(g);
  Vector linear = Vector::Zero(r);
  for (int g = 0; g < model.NumComponents(); ++g)
    linear += model.Block(g).transpose() *
              (model.ubm().variances().row(g).transpose().cwiseInverse().cwiseProduct(
                  stats.first.row(g).transpose()));
  Eigen::LLT<Matrix> llt(post.precision);
  if (llt.info() != Eigen::Success)
    throw NumericalError("posterior precision of '" + stats.recording_id +
                         "' is not positive definite");
  post.mean = llt.solve(linear);
  post.covariance = llt.solve(Matrix::Identity(r, r));
  post.second_moment = post.covariance + post.mean * post.mean.transpose();
  if (!post.mean.allFinite())
    throw NumericalError("non-finite i-vector posterior for '" +
                         stats.recording_id + "'");
  return post;
}

TMatrixAccumulators AccumulateTMatrix(const TotalVariabilityModel& model,
                                      const std::vector<BaumWelchStats>& stats) {
  const int g_count = model.NumComponents(), m = model.FeatureDim(),
            r = model.IvectorDim();
  std::vector<IvectorPosterior> posts(stats.size());
  ParallelFor(stats.size(),
              [&](std::size_t j) { posts[j] = ComputePosterior(model, stats[j]); });
  TMatrixAccumulators acc;
  acc.weighted_moment.assign(static_cast<std::size_t>(g_count), Matrix::Zero(r, r));
  acc.first_moment = Matrix::Zero(static_cast<Eigen::Index>(g_count) * m, r);
  acc.moment = Matrix::Zero(r, r);
  for (std::size_t j = 0; j < stats.size(); ++j) {
    const IvectorPosterior& p = posts[j];
    for (int g = 0; g < g_count; ++g) {
      acc.weighted_moment[static_cast<std::size_t>(g)] +=
          stats[j].counts[g] * p.second_moment;
      acc.first_moment.middleRows(static_cast<Eigen::Index>(g) * m, m) +=
          stats[j].first.row(g).transpose() * p.mean.transpose();
    }
    acc.moment += p.second_moment;
  }
  acc.num_recordings = static_cast<int>(stats.size());
  return acc;
}

TMatrixUpdate UpdateTMatrix(const TotalVariabilityModel& model,
                            const TMatrixAccumulators& acc) {
  if (acc.num_recordings < 1)
    throw InvalidArgument("T update needs at least one recording");
  const int m = model.FeatureDim();
  TMatrixUpdate up;
  up.t_ml = model.t();
  for (int g = 0; g < model.NumComponents(); ++g) {
    const Matrix& a = acc.weighted_moment[static_cast<std::size_t>(g)];
    Eigen::LLT<Matrix> llt(a);
    if (a.trace() <= 0.0 || llt.info() != Eigen::Success) {
      spdlog::warn("T update: component {} has no occupancy; block unchanged", g);
      continue;
    }
    // T_g = C_g A_g^-1, solved as A_g T_g^t = C_g^t with A_g symmetric.
    const auto c = acc.first_moment.middleRows(static_cast<Eigen::Index>(g) * m, m);
    up.t_ml.middleRows(static_cast<Eigen::Index>(g) * m, m) =
        llt.solve(c.transpose()).transpose();
  }
  up.prior_covariance = acc.moment / static_cast<double>(acc.num_recordings);
  up.prior_covariance =
      0.5 * (up.prior_covariance + up.prior_covariance.transpose());
  up.q = PrincipalSqrt(up.prior_covariance);
  up.t_md = up.t_ml * up.q;
  if (!up.t_md.allFinite()) throw NumericalError("non-finite T update");
  return up;
}

TMatrixTraining TrainTMatrix(const std::vector<BaumWelchStats>& stats,
                             const DiagGmm& ubm, const TMatrixConfig& config) {
  if (config.iterations < 1) throw InvalidArgument("T training needs >= 1 iteration");
  if (stats.empty()) throw InvalidArgument("T training needs statistics");
  const Eigen::Index super = static_cast<Eigen::Index>(ubm.NumComponents()) * ubm.Dim();
  if (config.ivector_dim < 1 || config.ivector_dim > super)
    throw InvalidArgument("i-vector dim must be in [1, G*M]");
  if (static_cast<int>(stats.size()) < config.ivector_dim)
    spdlog::warn("T training: {} recordings for i-vector dim {}", stats.size(),
                 config.ivector_dim);

  Rng rng(config.seed);
  Matrix t(super, config.ivector_dim);
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = 0; j < t.cols(); ++j) t(i, j) = rng.Normal();

  TMatrixTraining out{TotalVariabilityModel(ubm, std::move(t)), {}, {}};
  for (int iter = 0; iter < config.iterations; ++iter) {
    const TMatrixAccumulators acc = AccumulateTMatrix(out.model, stats);
    TMatrixUpdate up = UpdateTMatrix(out.model, acc);
    Matrix next = config.minimum_divergence ? std::move(up.t_md) : std::move(up.t_ml);
    out.frobenius_change.push_back((next - out.model.t()).norm());
    out.model = TotalVariabilityModel(ubm, std::move(next));
  }
  const TMatrixAccumulators final_acc = AccumulateTMatrix(out.model, stats);
  out.final_second_moment =
      final_acc.moment / static_cast<double>(final_acc.num_recordings);
  return out;
}

Embedding ExtractIvector(const TotalVariabilityModel& model,
                         const BaumWelchStats& stats) {
  Embedding e;
  e.recording_id = stats.recording_id;
  e.values = ComputePosterior(model, stats).mean;
  e.stage = EmbeddingStage::kRawIvector;
  return e;
}

void WriteTvModel(const std::filesystem::path& path,
                  const TotalVariabilityModel& model, const Sidecar& extra) {
  {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path.string());
    BinaryWriter w(os);
    w.Header(kTvMagic, kTvVersion);
    WriteGmm(w, model.ubm());
    w.U32(static_cast<uint32_t>(model.IvectorDim()));
    w.F64s(model.t());
  }
  Sidecar side = extra;
  side["format"] = "fvc-total-variability";
  side["ivector_dim"] = std::to_string(model.IvectorDim());
  WriteSidecar(path, side);
}

TotalVariabilityModel ReadTvModel(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  BinaryReader r(is, path.string());
  r.Header(kTvMagic, kTvVersion);
  DiagGmm ubm = ReadGmm(r);
  const uint32_t dim = r.U32();
  Matrix t = r.F64Matrix(static_cast<Eigen::Index>(ubm.NumComponents()) * ubm.Dim(), dim);
  r.ExpectEnd();
  return TotalVariabilityModel(std::move(ubm), std::move(t));
}

}  // namespace fvc
