// fvc/src/backend/plda.cc

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

#include "fvc/backend/plda.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <spdlog/spdlog.h>

#include "fvc/base/error.h"

namespace fvc {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

double LogDet(const Eigen::LLT<Matrix>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

double LogNormal(const Eigen::LLT<Matrix>& llt, double logdet, const Vector& d) {
  const Vector z = llt.matrixL().solve(d);
  return -0.5 * (static_cast<double>(d.size()) * kLog2Pi + logdet + z.squaredNorm());
}

double LogNormal1(double x, double mean, double var) {
  const double d = x - mean;
  return -0.5 * (kLog2Pi + std::log(var) + d * d / var);
}

// Integral over [lo, hi] of prod_i N(mu; m_i, s_i) as a function of mu, in
// the log domain. The integrand is shifted by its analytic peak and split at
// breakpoints around it so narrow peaks are not stepped over.
double LogGaussianProductIntegral(const std::vector<std::pair<double, double>>& f,
                                  double lo, double hi) {
  double prec = 0.0, lin = 0.0;
  for (auto [m, s] : f) {
    prec += 1.0 / s;
    lin += m / s;
  }
  const double peak = lin / prec, sd = 1.0 / std::sqrt(prec);
  auto log_integrand = [&](double mu) {
    double l = 0.0;
    for (auto [m, s] : f) l += LogNormal1(mu, m, s);
    return l;
  };
  const double centre = std::clamp(peak, lo, hi);
  const double shift = log_integrand(centre);
  std::vector<double> cuts{lo, hi};
  for (double k : {-8.0, -2.0, 0.0, 2.0, 8.0}) {
    const double c = peak + k * sd;
    if (c > lo && c < hi) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  auto g = [&](double mu) { return std::exp(log_integrand(mu) - shift); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        g, cuts[i], cuts[i + 1], 15, 1e-12);
  return shift + std::log(total);
}

Vector MeanOf(const std::vector<Vector>& v) {
  Vector m = Vector::Zero(v.front().size());
  for (const Vector& x : v) m += x;
  return m / static_cast<double>(v.size());
}

}  // namespace

PldaModel::PldaModel(Vector mu_b, Matrix sigma_w, Matrix sigma_b)
    : mu_b_(std::move(mu_b)), sigma_w_(std::move(sigma_w)), sigma_b_(std::move(sigma_b)) {
  const Eigen::Index d = mu_b_.size();
  if (d < 1 || sigma_w_.rows() != d || sigma_w_.cols() != d || sigma_b_.rows() != d ||
      sigma_b_.cols() != d)
    throw DimensionMismatch("PLDA parameter dimensions disagree");
  if (!mu_b_.allFinite() || !sigma_w_.allFinite() || !sigma_b_.allFinite())
    throw NumericalError("non-finite PLDA parameters");
  Eigen::LLT<Matrix> w(sigma_w_);
  if (w.info() != Eigen::Success)
    throw NumericalError("PLDA Sigma_w is not positive definite");
  Matrix joint(2 * d, 2 * d);
  const Matrix total = sigma_w_ + sigma_b_;
  joint << total, sigma_b_, sigma_b_, total;
  joint_.compute(joint);
  marginal_.compute(total);
  if (joint_.info() != Eigen::Success || marginal_.info() != Eigen::Success)
    throw NumericalError("PLDA stacked covariance is singular");
  joint_logdet_ = LogDet(joint_);
  marginal_logdet_ = LogDet(marginal_);
}

double PldaModel::Score(const Vector& v_q, const Vector& v_k) const {
  if (v_q.size() != Dim() || v_k.size() != Dim())
    throw DimensionMismatch("PLDA score: embedding dim does not match model dim " +
                            std::to_string(Dim()));
  Vector stacked(2 * Dim());
  stacked << v_q - mu_b_, v_k - mu_b_;
  const double num = LogNormal(joint_, joint_logdet_, stacked);
  const double den = LogNormal(marginal_, marginal_logdet_, v_q - mu_b_) +
                     LogNormal(marginal_, marginal_logdet_, v_k - mu_b_);
  const double s = num - den;
  if (!std::isfinite(s)) throw NumericalError("non-finite PLDA score");
  return s;
}

PldaModel FitPlda(const SpeakerGroups& groups) {
  if (groups.NumSpeakers() < 2)
    throw InvalidArgument("PLDA needs at least 2 speakers, got " +
                          std::to_string(groups.NumSpeakers()));
  const int d = groups.Dim();
  Matrix sw = Matrix::Zero(d, d);
  std::size_t n = 0;
  std::vector<Vector> means;
  for (const auto& spk : groups.members) {
    const Vector m = MeanOf(spk);
    means.push_back(m);
    if (spk.size() < 2) continue;
    for (const Vector& x : spk) {
      sw += (x - m) * (x - m).transpose();
      ++n;
    }
  }
  if (n == 0)
    throw InvalidArgument("PLDA needs at least one speaker with 2 embeddings");
  sw /= static_cast<double>(n);
  sw = 0.5 * (sw + sw.transpose());
  if (Eigen::LLT<Matrix>(sw).info() != Eigen::Success ||
      Eigen::SelfAdjointEigenSolver<Matrix>(sw, Eigen::EigenvaluesOnly)
              .eigenvalues()
              .minCoeff() <= 0.0) {
    const double tr = sw.trace();
    const double floor = 1e-8 * (tr > 0.0 ? tr / d : 1.0);
    spdlog::warn("PLDA Sigma_w not positive definite; adding {:.3g}", floor);
    sw.diagonal().array() += floor;
  }
  const Vector mu_b = MeanOf(means);
  Matrix sb = Matrix::Zero(d, d);
  for (const Vector& m : means) sb += (m - mu_b) * (m - mu_b).transpose();
  sb /= static_cast<double>(means.size());
  sb = 0.5 * (sb + sb.transpose());
  return PldaModel(mu_b, sw, sb);
}

PldaModel FitPlda(const std::vector<Embedding>& embeddings,
                  const std::vector<std::string>& speaker_ids) {
  return FitPlda(GroupBySpeaker(embeddings, speaker_ids));
}

double PldaScore(const PldaModel& model, const Embedding& v_q, const Embedding& v_k) {
  if (v_q.stage != EmbeddingStage::kCldf || v_k.stage != EmbeddingStage::kCldf)
    throw InvalidArgument("PLDA scoring expects cldf-stage embeddings");
  return model.Score(v_q.values, v_k.values);
}

double PldaDiscreteLogLr(const std::vector<double>& speaker_means, double sigma_w2,
                         double v_q, double v_k) {
  const std::size_t n = speaker_means.size();
  if (n < 2) throw InvalidArgument("discrete PLDA oracle needs >= 2 speaker means");
  if (!(sigma_w2 > 0.0)) throw InvalidArgument("sigma_w^2 must be positive");
  std::vector<double> lq(n), lk(n);
  for (std::size_t i = 0; i < n; ++i) {
    lq[i] = LogNormal1(v_q, speaker_means[i], sigma_w2);
    lk[i] = LogNormal1(v_k, speaker_means[i], sigma_w2);
  }
  const double sq = *std::max_element(lq.begin(), lq.end());
  const double sk = *std::max_element(lk.begin(), lk.end());
  std::vector<double> fq(n), fk(n);
  double sum_q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    fq[i] = std::exp(lq[i] - sq);
    fk[i] = std::exp(lk[i] - sk);
    sum_q += fq[i];
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += fq[i] * fk[i];
    den += fk[i] * (sum_q - fq[i]) / static_cast<double>(n - 1);
  }
  // Both averages carry the same 1/n and the same shifts, which cancel.
  return std::log(num) - std::log(den);
}

double PldaIntegralLogLr(double mu_b, double sigma_w2, double sigma_b2, double v_q,
                         double v_k) {
  if (!(sigma_w2 > 0.0) || !(sigma_b2 > 0.0))
    throw InvalidArgument("integral PLDA oracle needs positive variances");
  const double half = 10.0 * std::sqrt(sigma_b2);
  const double lo = mu_b - half, hi = mu_b + half;
  const double num = LogGaussianProductIntegral(
      {{v_q, sigma_w2}, {v_k, sigma_w2}, {mu_b, sigma_b2}}, lo, hi);
  const double den_q = LogGaussianProductIntegral({{v_q, sigma_w2}, {mu_b, sigma_b2}}, lo, hi);
  const double den_k = LogGaussianProductIntegral({{v_k, sigma_w2}, {mu_b, sigma_b2}}, lo, hi);
  return num - den_q - den_k;
}

void WritePlda(BinaryWriter& w, const PldaModel& m) {
  w.U32(static_cast<uint32_t>(m.Dim()));
  w.F64s(m.mu_b());
  w.F64s(m.sigma_w());
  w.F64s(m.sigma_b());
}

PldaModel ReadPlda(BinaryReader& r) {
  const Eigen::Index d = r.U32();
  Vector mu = r.F64Vector(d);
  Matrix sw = r.F64Matrix(d, d);
  Matrix sb = r.F64Matrix(d, d);
  return PldaModel(std::move(mu), std::move(sw), std::move(sb));
}

}  // namespace fvc
