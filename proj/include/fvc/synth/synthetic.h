// fvc/include/fvc/synth/synthetic.h

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

#ifndef FVC_SYNTH_SYNTHETIC_H_
#define FVC_SYNTH_SYNTHETIC_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fvc/base/types.h"
#include "fvc/base/random.h"
#include "fvc/gmm/diag-gmm.h"

namespace fvc {

// Every generator is a pure function of its options; all draws come from one
// Rng seeded with spec.seed, in a fixed order.

/// Draws x ~ N(mean, cov) with cov PSD (symmetric square root, so a zero
/// covariance returns the mean).
Vector SampleGaussian(Rng& rng, const Vector& mean, const Matrix& cov);

struct EmbeddingCorpusSpec {
  int num_speakers = 10;
  int recordings_per_speaker = 4;
  Vector mu_b;      // D
  Matrix sigma_b;   // D x D, between-speaker
  Matrix sigma_w;   // D x D, within-speaker
  uint64_t seed = 0;
};

struct EmbeddingCorpus {
  std::vector<Vector> embeddings;
  std::vector<std::string> speaker_ids;
  std::vector<Vector> speaker_means;  // ground truth, one per speaker
};

/// Speaker means from N(mu_b, Sigma_b), recordings from N(mean, Sigma_w).
EmbeddingCorpus GenEmbeddingCorpus(const EmbeddingCorpusSpec& spec);

struct FeatureCorpusSpec {
  int num_speakers = 10;
  int frames_per_recording = 3000;
  int dim = 12;
  int components = 8;             // per speaker GMM
  double phone_spread = 2.0;      // sd of the shared component centres
  double speaker_spread = 0.15;   // sd of each speaker's per-component offset
  double session_spread = 0.3;    // sd of per-recording component shifts
  double frame_variance = 1.0;    // mean diagonal variance of each component
  /// Condition tag of each recording of a speaker, in order.
  std::vector<std::string> recording_conditions{"questioned-like", "questioned-like",
                                                "known-like", "known-like"};
  /// Constant channel offset per condition; a condition absent from the map
  /// gets an offset drawn from N(0, channel_spread^2 I).
  std::map<std::string, Vector> channel_offsets;
  double channel_spread = 1.0;
  uint64_t seed = 0;
};

struct FeatureRecording {
  std::string recording_id;
  std::string speaker_id;
  std::string condition;
  RowMatrix frames;        // speaker frames + session shifts + channel offset
  Vector channel_offset;   // the condition offset that was added
};

struct FeatureCorpus {
  std::vector<FeatureRecording> recordings;
  std::vector<DiagGmm> speaker_models;  // ground truth, without any offsets
  std::vector<std::string> speaker_ids;
  std::map<std::string, Vector> channel_offsets;
};

/// Speakers are random GMMs sharing component centres, each with its own
/// offsets; recordings are i.i.d. frames from the speaker's GMM whose
/// component means get a per-recording session shift, plus the condition's
/// constant channel offset.
FeatureCorpus GenFeatureCorpus(const FeatureCorpusSpec& spec);

/// (same, diff): n i.i.d. draws each from N(mu_s, sigma2), N(mu_d, sigma2).
std::pair<std::vector<double>, std::vector<double>> GenScoreSets(
    double mu_s, double mu_d, double sigma2, int n, uint64_t seed);

}  // namespace fvc

#endif  // FVC_SYNTH_SYNTHETIC_H_
