// fvc/src/gmm/em.cc

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

#include "fvc/gmm/em.h"

#include <cmath>
#include <string>

#include <spdlog/spdlog.h>

#include "fvc/base/error.h"
#include "fvc/base/parallel.h"
#include "fvc/gmm/kmeans.h"

namespace fvc {

namespace {

constexpr Eigen::Index kBlockFrames = 2048;
constexpr double kEmptyOccupancy = 1e-6;

GmmStats ZeroStats(int g, int m) {
  GmmStats s;
  s.occupancy = Vector::Zero(g);
  s.first = Matrix::Zero(g, m);
  s.second = Matrix::Zero(g, m);
  return s;
}

}  // namespace

GmmStats AccumulateGmmStats(const DiagGmm& gmm, const RowMatrix& frames) {
  const int g = gmm.NumComponents(), m = gmm.Dim();
  const Eigen::Index n = frames.rows();
  const std::size_t blocks =
      static_cast<std::size_t>((n + kBlockFrames - 1) / kBlockFrames);
  std::vector<GmmStats> partial(blocks);
  ParallelFor(blocks, [&](std::size_t b) {
    const Eigen::Index start = static_cast<Eigen::Index>(b) * kBlockFrames;
    const Eigen::Index len = std::min(kBlockFrames, n - start);
    const RowMatrix block = frames.middleRows(start, len);
    Responsibilities r = ComputeResponsibilities(gmm, block);
    GmmStats& s = partial[b];
    s = ZeroStats(g, m);
    s.occupancy = r.gamma.colwise().sum().transpose();
    s.first.noalias() = r.gamma.transpose() * block;
    s.second.noalias() = r.gamma.transpose() * block.cwiseAbs2();
    s.log_likelihood = r.frame_log_likelihood.sum();
    s.num_frames = len;
    Eigen::Index worst;
    s.worst_log_likelihood = r.frame_log_likelihood.minCoeff(&worst);
    s.worst_frame = start + worst;
  });
  GmmStats total = ZeroStats(g, m);
  for (const GmmStats& s : partial) {
    total.occupancy += s.occupancy;
    total.first += s.first;
    total.second += s.second;
    total.log_likelihood += s.log_likelihood;
    total.num_frames += s.num_frames;
    if (total.worst_frame < 0 || s.worst_log_likelihood < total.worst_log_likelihood) {
      total.worst_frame = s.worst_frame;
      total.worst_log_likelihood = s.worst_log_likelihood;
    }
  }
  return total;
}

EmResult EmFit(const RowMatrix& data, const EmConfig& config) {
  if (config.num_components < 1)
    throw InvalidArgument("EM needs at least one component");
  if (data.rows() < config.num_components)
    throw InsufficientDataError("EM needs at least as many frames as components");
  return EmFit(data, KMeansInit(data, config.num_components, config.seed),
               config);
}

EmResult EmFit(const RowMatrix& data, const DiagGmm& initial,
               const EmConfig& config) {
  if (!(config.convergence_threshold > 0.0))
    throw InvalidArgument("convergence threshold must be positive");
  if (data.cols() != initial.Dim())
    throw DimensionMismatch("data dim differs from initial GMM dim");
  const int g = initial.NumComponents();
  if (data.rows() < g)
    throw InsufficientDataError("EM needs at least as many frames as components");
  const double n = static_cast<double>(data.rows());
  const Eigen::RowVectorXd global_mean = data.colwise().mean();
  Eigen::RowVectorXd global_var =
      (data.rowwise() - global_mean).array().square().colwise().mean();
  for (Eigen::Index d = 0; d < global_var.size(); ++d)
    if (!(global_var[d] > 0.0)) global_var[d] = 1.0;
  const Eigen::RowVectorXd floor = config.variance_floor_factor * global_var;

  EmResult result;
  result.gmm = initial;
  std::vector<int> empty_strikes(static_cast<std::size_t>(g), 0);
  for (int iter = 0;; ++iter) {
    const GmmStats stats = AccumulateGmmStats(result.gmm, data);
    const double mean_ll = stats.log_likelihood / n;
    if (!std::isfinite(mean_ll))
      throw NumericalError("EM: non-finite log-likelihood at iteration " +
                           std::to_string(iter));
    result.log_likelihood_trace.push_back(mean_ll);
    if (iter > 0) {
      const double gain = mean_ll - result.log_likelihood_trace[iter - 1];
      if (gain < config.convergence_threshold) {
        result.converged = true;
        break;
      }
    }
    if (iter >= config.max_iterations) break;

    Vector weights = stats.occupancy / n;
    Matrix means = result.gmm.means();
    Matrix vars = result.gmm.variances();
    Eigen::Index next_reseed_frame = stats.worst_frame;
    for (int c = 0; c < g; ++c) {
      const double occ = stats.occupancy[c];
      auto& strikes = empty_strikes[static_cast<std::size_t>(c)];
      if (occ < kEmptyOccupancy) {
        if (++strikes >= 2) {
          // Re-seed at the worst-explained datum with a broad variance.
          means.row(c) = data.row(next_reseed_frame);
          vars.row(c) = global_var;
          weights[c] = 1.0 / n;
          strikes = 0;
          ++result.reseeded_components;
          spdlog::warn("EM: component {} collapsed; re-seeded at frame {}", c,
                       next_reseed_frame);
          next_reseed_frame = (next_reseed_frame + 1) % data.rows();
        }
        continue;
      }
      strikes = 0;
      means.row(c) = stats.first.row(c) / occ;
      Eigen::RowVectorXd var =
          stats.second.row(c) / occ - means.row(c).cwiseAbs2();
      vars.row(c) = var.cwiseMax(floor);
    }
    weights /= weights.sum();
    result.gmm = DiagGmm(std::move(weights), std::move(means), std::move(vars));
    result.iterations = iter + 1;
  }
  return result;
}

}  // namespace fvc
