// fvc/src/gmm/diag-gmm.cc

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

#include "fvc/gmm/diag-gmm.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>

#include "fvc/base/error.h"

namespace fvc {

namespace {
constexpr std::string_view kGmmMagic = "FVCG";
constexpr uint32_t kGmmVersion = 1;
const double kLog2Pi = std::log(2.0 * std::numbers::pi);
}  // namespace

double LogSumExp(const Eigen::Ref<const Vector>& v) {
  const double max = v.maxCoeff();
  if (!std::isfinite(max)) return max;
  return max + std::log((v.array() - max).exp().sum());
}

DiagGmm::DiagGmm(Vector weights, Matrix means, Matrix variances)
    : weights_(std::move(weights)),
      means_(std::move(means)),
      variances_(std::move(variances)) {
  const Eigen::Index g = weights_.size();
  if (g < 1) throw InvalidArgument("GMM needs at least one component");
  if (means_.rows() != g || variances_.rows() != g ||
      means_.cols() != variances_.cols() || means_.cols() < 1)
    throw DimensionMismatch("GMM weights/means/variances shapes disagree");
  if ((weights_.array() < 0.0).any() || std::abs(weights_.sum() - 1.0) > 1e-9)
    throw InvalidArgument("GMM weights must be non-negative and sum to 1");
  if (!(variances_.array() > 0.0).all() || !means_.allFinite() ||
      !variances_.allFinite())
    throw InvalidArgument("GMM variances must be positive and finite");
  Precompute();
}

void DiagGmm::Precompute() {
  inv_variances_ = variances_.cwiseInverse();
  log_consts_.resize(weights_.size());
  for (Eigen::Index g = 0; g < weights_.size(); ++g) {
    log_consts_[g] = std::log(weights_[g]) -
                     0.5 * (Dim() * kLog2Pi +
                            variances_.row(g).array().log().sum());
  }
}

Vector DiagGmm::ComponentLogLikelihoods(
    const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  if (x.size() != Dim())
    throw DimensionMismatch("feature dim " + std::to_string(x.size()) +
                            " != GMM dim " + std::to_string(Dim()));
  Vector out(NumComponents());
  for (int g = 0; g < NumComponents(); ++g) {
    const double maha =
        ((x - means_.row(g)).array().square() * inv_variances_.row(g).array())
            .sum();
    out[g] = log_consts_[g] - 0.5 * maha;
  }
  return out;
}

double DiagGmm::LogDensity(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  return LogSumExp(ComponentLogLikelihoods(x));
}

Matrix DiagGmm::ComponentLogLikelihoods(const RowMatrix& frames) const {
  if (frames.cols() != Dim())
    throw DimensionMismatch("feature dim " + std::to_string(frames.cols()) +
                            " != GMM dim " + std::to_string(Dim()));
  // -0.5 * sum_d (x_d - mu_d)^2 / var_d expanded into three products.
  const Matrix mean_over_var = means_.cwiseProduct(inv_variances_);
  const Vector mean_term =
      means_.cwiseProduct(mean_over_var).rowwise().sum();
  Matrix out = frames * mean_over_var.transpose();
  out.noalias() -= 0.5 * frames.cwiseAbs2() * inv_variances_.transpose();
  out.rowwise() += (log_consts_ - 0.5 * mean_term).transpose();
  return out;
}

Vector DiagGmm::MeanSupervector() const {
  Vector s(static_cast<Eigen::Index>(NumComponents()) * Dim());
  for (int g = 0; g < NumComponents(); ++g)
    s.segment(static_cast<Eigen::Index>(g) * Dim(), Dim()) =
        means_.row(g).transpose();
  return s;
}

DiagGmm DiagGmm::WithMeans(Matrix means) const {
  return DiagGmm(weights_, std::move(means), variances_);
}

Responsibilities ComputeResponsibilities(const DiagGmm& gmm,
                                         const RowMatrix& frames) {
  Responsibilities r;
  r.gamma = gmm.ComponentLogLikelihoods(frames);
  r.frame_log_likelihood.resize(frames.rows());
  for (Eigen::Index i = 0; i < frames.rows(); ++i) {
    const double total = LogSumExp(r.gamma.row(i).transpose());
    if (!std::isfinite(total))
      throw NumericalError("non-finite frame likelihood at frame " +
                           std::to_string(i));
    r.frame_log_likelihood[i] = total;
    r.gamma.row(i) = (r.gamma.row(i).array() - total).exp();
    // Renormalize so rows sum to one despite exp() rounding.
    r.gamma.row(i) /= r.gamma.row(i).sum();
  }
  return r;
}

void WriteGmm(BinaryWriter& w, const DiagGmm& gmm) {
  w.U32(static_cast<uint32_t>(gmm.NumComponents()));
  w.U32(static_cast<uint32_t>(gmm.Dim()));
  w.F64s(gmm.weights());
  w.F64s(gmm.means());
  w.F64s(gmm.variances());
}

DiagGmm ReadGmm(BinaryReader& r) {
  const uint32_t g = r.U32();
  const uint32_t m = r.U32();
  if (g == 0 || m == 0 || g > (1u << 20) || m > (1u << 16))
    throw FormatError("implausible GMM shape");
  Vector w = r.F64Vector(g);
  Matrix means = r.F64Matrix(g, m);
  Matrix vars = r.F64Matrix(g, m);
  try {
    return DiagGmm(std::move(w), std::move(means), std::move(vars));
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("stored GMM is invalid: ") + e.what());
  }
}

void WriteGmm(const std::filesystem::path& path, const DiagGmm& gmm,
              const Sidecar& extra) {
  {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path.string());
    BinaryWriter w(os);
    w.Header(kGmmMagic, kGmmVersion);
    WriteGmm(w, gmm);
  }
  Sidecar side = extra;
  side["format"] = "fvc-gmm";
  side["components"] = std::to_string(gmm.NumComponents());
  side["dim"] = std::to_string(gmm.Dim());
  WriteSidecar(path, side);
}

DiagGmm ReadGmm(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  BinaryReader r(is, path.string());
  r.Header(kGmmMagic, kGmmVersion);
  DiagGmm gmm = ReadGmm(r);
  r.ExpectEnd();
  return gmm;
}

}  // namespace fvc
