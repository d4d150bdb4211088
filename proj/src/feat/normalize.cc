// fvc/src/feat/normalize.cc

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

#include "fvc/feat/normalize.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <spdlog/spdlog.h>

#include "fvc/base/error.h"
#include "fvc/feat/normal-quantile.h"

namespace fvc {

namespace {

void RequireFrames(const FeatureMatrix& f, Eigen::Index min, const char* what) {
  if (f.NumFrames() < min)
    throw InvalidArgument(std::string(what) + " needs at least " +
                          std::to_string(min) + " frames, got " +
                          std::to_string(f.NumFrames()));
}

FeatureMatrix Tagged(const FeatureMatrix& in) {
  FeatureMatrix out = in;
  out.stage = FeatureStage::kCompensated;
  return out;
}

}  // namespace

FeatureMatrix Cms(const FeatureMatrix& features) {
  RequireFrames(features, 1, "CMS");
  FeatureMatrix out = Tagged(features);
  const Eigen::RowVectorXd mean = features.vectors.colwise().mean();
  out.vectors.rowwise() -= mean;
  return out;
}

FeatureMatrix Cmvn(const FeatureMatrix& features) {
  RequireFrames(features, 2, "CMVN");
  FeatureMatrix out = Cms(features);
  const double n = static_cast<double>(features.NumFrames());
  for (Eigen::Index d = 0; d < out.Dim(); ++d) {
    const double var = out.vectors.col(d).squaredNorm() / n;
    if (var > 0.0) {
      out.vectors.col(d) /= std::sqrt(var);
    } else {
      spdlog::warn("CMVN: dimension {} has zero variance; zeroing it", d);
      out.vectors.col(d).setZero();
    }
  }
  return out;
}

FeatureMatrix CmsWindowed(const FeatureMatrix& features, int half_window) {
  RequireFrames(features, 1, "windowed CMS");
  if (half_window < 1) throw InvalidArgument("half_window must be >= 1");
  FeatureMatrix out = Tagged(features);
  const Eigen::Index n = features.NumFrames();
  for (Eigen::Index t = 0; t < n; ++t) {
    const Eigen::Index lo = std::max<Eigen::Index>(0, t - half_window);
    const Eigen::Index hi = std::min<Eigen::Index>(n - 1, t + half_window);
    out.vectors.row(t) -=
        features.vectors.middleRows(lo, hi - lo + 1).colwise().mean();
  }
  return out;
}

FeatureMatrix CmvnWindowed(const FeatureMatrix& features, int half_window) {
  RequireFrames(features, 2, "windowed CMVN");
  if (half_window < 1) throw InvalidArgument("half_window must be >= 1");
  FeatureMatrix out = Tagged(features);
  const Eigen::Index n = features.NumFrames();
  for (Eigen::Index t = 0; t < n; ++t) {
    const Eigen::Index lo = std::max<Eigen::Index>(0, t - half_window);
    const Eigen::Index hi = std::min<Eigen::Index>(n - 1, t + half_window);
    const auto window = features.vectors.middleRows(lo, hi - lo + 1);
    const Eigen::RowVectorXd mean = window.colwise().mean();
    const Eigen::RowVectorXd var =
        (window.rowwise() - mean).array().square().colwise().mean();
    for (Eigen::Index d = 0; d < features.Dim(); ++d) {
      const double centred = features.vectors(t, d) - mean[d];
      out.vectors(t, d) = var[d] > 0.0 ? centred / std::sqrt(var[d]) : 0.0;
    }
  }
  return out;
}

FeatureMatrix FeatureWarp(const FeatureMatrix& features,
                          const WarpConfig& config) {
  RequireFrames(features, 2, "feature warping");
  if (config.half_window_frames < 1)
    throw InvalidArgument("half_window_frames must be >= 1");
  FeatureMatrix out = Tagged(features);
  const Eigen::Index n = features.NumFrames();
  const Eigen::Index half = config.half_window_frames;
  for (Eigen::Index d = 0; d < features.Dim(); ++d) {
    const auto col = features.vectors.col(d);
    for (Eigen::Index t = 0; t < n; ++t) {
      const Eigen::Index lo = std::max<Eigen::Index>(0, t - half);
      const Eigen::Index hi = std::min<Eigen::Index>(n - 1, t + half);
      const double x = col[t];
      Eigen::Index below = 0;
      for (Eigen::Index j = lo; j <= hi; ++j)
        below += (col[j] < x) || (col[j] == x && j < t);
      const double m = static_cast<double>(hi - lo + 1);
      out.vectors(t, d) = NormalQuantile((below + 0.5) / m);
    }
  }
  return out;
}

Compensation ParseCompensation(std::string_view name) {
  if (name == "none") return Compensation::kNone;
  if (name == "cms") return Compensation::kCms;
  if (name == "cmvn") return Compensation::kCmvn;
  if (name == "warp") return Compensation::kWarp;
  throw InvalidArgument("unknown compensation '" + std::string(name) +
                        "' (expected none, cms, cmvn or warp)");
}

std::string_view CompensationName(Compensation c) {
  switch (c) {
    case Compensation::kNone: return "none";
    case Compensation::kCms: return "cms";
    case Compensation::kCmvn: return "cmvn";
    case Compensation::kWarp: return "warp";
  }
  return "?";
}

FeatureMatrix Compensate(const FeatureMatrix& features, Compensation method,
                         const WarpConfig& warp) {
  if (features.stage != FeatureStage::kRaw)
    throw InvalidArgument("features are already compensated");
  switch (method) {
    case Compensation::kNone: return Tagged(features);
    case Compensation::kCms: return Cms(features);
    case Compensation::kCmvn: return Cmvn(features);
    case Compensation::kWarp: return FeatureWarp(features, warp);
  }
  return Tagged(features);
}

}  // namespace fvc
