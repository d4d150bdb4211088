// fvc/src/synth/synthetic.cc

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

#include "fvc/synth/synthetic.h"

#include <cmath>
#include <cstdio>

#include "fvc/base/error.h"
#include "fvc/base/random.h"

namespace fvc {

namespace {

Matrix SymmetricSqrt(const Matrix& cov) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (cov + cov.transpose()));
  if (eig.info() != Eigen::Success) throw NumericalError("covariance eigensolve failed");
  const Vector lambda = eig.eigenvalues();
  if (lambda.minCoeff() < -1e-12 * std::max(1.0, lambda.cwiseAbs().maxCoeff()))
    throw InvalidArgument("covariance is not positive semi-definite");
  return eig.eigenvectors() * lambda.cwiseMax(0.0).cwiseSqrt().asDiagonal() *
         eig.eigenvectors().transpose();
}

Vector NormalVector(Rng& rng, Eigen::Index n, double sd) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = sd * rng.Normal();
  return v;
}

std::string Id(const char* prefix, int n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03d", prefix, n);
  return buf;
}

}  // namespace

Vector SampleGaussian(Rng& rng, const Vector& mean, const Matrix& cov) {
  if (cov.rows() != mean.size() || cov.cols() != mean.size())
    throw DimensionMismatch("covariance does not match mean");
  return mean + SymmetricSqrt(cov) * NormalVector(rng, mean.size(), 1.0);
}

EmbeddingCorpus GenEmbeddingCorpus(const EmbeddingCorpusSpec& spec) {
  if (spec.num_speakers < 1 || spec.recordings_per_speaker < 1)
    throw InvalidArgument("embedding corpus counts must be >= 1");
  const Eigen::Index d = spec.mu_b.size();
  if (d < 1 || spec.sigma_b.rows() != d || spec.sigma_w.rows() != d)
    throw DimensionMismatch("embedding corpus parameters disagree in dimension");
  const Matrix rb = SymmetricSqrt(spec.sigma_b), rw = SymmetricSqrt(spec.sigma_w);
  Rng rng(spec.seed);
  EmbeddingCorpus c;
  for (int s = 0; s < spec.num_speakers; ++s) {
    const Vector mean = spec.mu_b + rb * NormalVector(rng, d, 1.0);
    c.speaker_means.push_back(mean);
    for (int r = 0; r < spec.recordings_per_speaker; ++r) {
      c.embeddings.push_back(mean + rw * NormalVector(rng, d, 1.0));
      c.speaker_ids.push_back(Id("spk", s));
    }
  }
  return c;
}

FeatureCorpus GenFeatureCorpus(const FeatureCorpusSpec& spec) {
  if (spec.num_speakers < 1 || spec.frames_per_recording < 1 || spec.dim < 1 ||
      spec.components < 1 || spec.recording_conditions.empty())
    throw InvalidArgument("feature corpus counts must be >= 1");
  if (!(spec.frame_variance > 0.0))
    throw InvalidArgument("frame variance must be positive");
  const int m = spec.dim, g = spec.components;
  Rng rng(spec.seed);
  FeatureCorpus c;

  // Condition offsets, in order of first use.
  c.channel_offsets = spec.channel_offsets;
  for (const std::string& cond : spec.recording_conditions) {
    auto it = c.channel_offsets.find(cond);
    if (it == c.channel_offsets.end())
      c.channel_offsets[cond] = NormalVector(rng, m, spec.channel_spread);
    else if (it->second.size() != m)
      throw DimensionMismatch("channel offset for '" + cond + "' has wrong dim");
  }

  Matrix centres(g, m);
  for (int k = 0; k < g; ++k)
    centres.row(k) = NormalVector(rng, m, spec.phone_spread).transpose();
  Matrix variances(g, m);
  for (int k = 0; k < g; ++k)
    for (int j = 0; j < m; ++j)
      variances(k, j) = spec.frame_variance * (0.5 + rng.Uniform());

  for (int s = 0; s < spec.num_speakers; ++s) {
    Vector w(g);
    for (int k = 0; k < g; ++k) w(k) = 0.5 + rng.Uniform();
    w /= w.sum();
    Matrix means = centres;
    for (int k = 0; k < g; ++k)
      means.row(k) += NormalVector(rng, m, spec.speaker_spread).transpose();
    c.speaker_models.emplace_back(w, means, variances);
    c.speaker_ids.push_back(Id("spk", s));
  }

  for (int s = 0; s < spec.num_speakers; ++s) {
    const DiagGmm& model = c.speaker_models[static_cast<std::size_t>(s)];
    Vector cdf(g);
    double acc = 0.0;
    for (int k = 0; k < g; ++k) cdf(k) = (acc += model.weights()(k));
    for (std::size_t r = 0; r < spec.recording_conditions.size(); ++r) {
      FeatureRecording rec;
      rec.speaker_id = c.speaker_ids[static_cast<std::size_t>(s)];
      rec.recording_id = rec.speaker_id + "_" + Id("r", static_cast<int>(r));
      rec.condition = spec.recording_conditions[r];
      rec.channel_offset = c.channel_offsets.at(rec.condition);
      Matrix session(g, m);
      for (int k = 0; k < g; ++k)
        session.row(k) = NormalVector(rng, m, spec.session_spread).transpose();
      rec.frames.resize(spec.frames_per_recording, m);
      for (int i = 0; i < spec.frames_per_recording; ++i) {
        const double u = rng.Uniform();
        int k = 0;
        while (k + 1 < g && u >= cdf(k)) ++k;
        for (int j = 0; j < m; ++j)
          rec.frames(i, j) = model.means()(k, j) +
                             std::sqrt(model.variances()(k, j)) * rng.Normal() +
                             session(k, j) + rec.channel_offset(j);
      }
      c.recordings.push_back(std::move(rec));
    }
  }
  return c;
}

std::pair<std::vector<double>, std::vector<double>> GenScoreSets(
    double mu_s, double mu_d, double sigma2, int n, uint64_t seed) {
  if (!(sigma2 > 0.0)) throw InvalidArgument("score variance must be positive");
  if (n < 1) throw InvalidArgument("score set size must be >= 1");
  Rng rng(seed);
  const double sd = std::sqrt(sigma2);
  std::vector<double> same(static_cast<std::size_t>(n)), diff(static_cast<std::size_t>(n));
  for (double& v : same) v = rng.Normal(mu_s, sd);
  for (double& v : diff) v = rng.Normal(mu_d, sd);
  return {std::move(same), std::move(diff)};
}

}  // namespace fvc
