// fvc/src/feat/mfcc.cc

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

#include "fvc/feat/mfcc.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

namespace fvc {

void MfccConfig::Validate(int sample_rate) const {
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  if (!(band_low_hz >= 0.0) || !(band_low_hz < band_high_hz))
    throw InvalidArgument("mel band must satisfy 0 <= low < high");
  if (band_high_hz > sample_rate / 2.0)
    throw InvalidArgument("band_high_hz " + std::to_string(band_high_hz) +
                          " exceeds Nyquist for " + std::to_string(sample_rate) +
                          " Hz");
  if (num_filters < 1) throw InvalidArgument("num_filters must be >= 1");
  if (num_ceps < 1 || num_ceps >= num_filters)
    throw InvalidArgument("num_ceps must be in [1, num_filters - 1]");
  if (delta_span_frames < 1) throw InvalidArgument("delta span must be >= 1");
  if (framing.LengthSamples(sample_rate) < 2 ||
      framing.ShiftSamples(sample_rate) < 1)
    throw InvalidArgument("frame length/shift too small for sample rate");
}

double MelScale(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double InverseMelScale(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

std::vector<double> HammingWindow(std::size_t n) {
  if (n < 2) throw InvalidArgument("window length must be >= 2");
  std::vector<double> w(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / denom);
  return w;
}

std::vector<double> WindowFrame(std::span<const double> frame) {
  std::vector<double> out = HammingWindow(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) out[i] *= frame[i];
  return out;
}

std::size_t NextPowerOfTwo(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> PowerSpectrum(std::span<const double> frame) {
  const std::size_t n = NextPowerOfTwo(std::max<std::size_t>(frame.size(), 2));
  std::vector<double> padded(n, 0.0);
  std::copy(frame.begin(), frame.end(), padded.begin());
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, padded);
  std::vector<double> power(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) power[k] = std::norm(spec[k]);
  return power;
}

MelFilterbank::MelFilterbank(int num_filters, double low_hz, double high_hz,
                             int sample_rate, std::size_t fft_size)
    : num_filters_(num_filters), sample_rate_(sample_rate), fft_size_(fft_size) {
  if (num_filters < 1) throw InvalidArgument("num_filters must be >= 1");
  if (!(low_hz >= 0.0) || !(low_hz < high_hz))
    throw InvalidArgument("degenerate mel band: low must be below high");
  if (high_hz > sample_rate / 2.0)
    throw InvalidArgument("mel band exceeds Nyquist");
  const double mel_low = MelScale(low_hz);
  const double mel_high = MelScale(high_hz);
  const double step = (mel_high - mel_low) / (num_filters + 1);
  edges_hz_.resize(num_filters + 2);
  for (int i = 0; i < num_filters + 2; ++i)
    edges_hz_[i] = InverseMelScale(mel_low + i * step);
  edges_hz_.front() = low_hz;
  edges_hz_.back() = high_hz;
  weights_.assign(num_filters, Vector::Zero(static_cast<Eigen::Index>(NumBins())));
  for (int j = 0; j < num_filters; ++j)
    for (std::size_t k = 0; k < NumBins(); ++k)
      weights_[j][static_cast<Eigen::Index>(k)] = Weight(j, BinHz(k));
}

double MelFilterbank::Weight(int j, double hz) const {
  const double left = edges_hz_[j];
  const double centre = edges_hz_[j + 1];
  const double right = edges_hz_[j + 2];
  if (hz <= left || hz >= right) return 0.0;
  if (hz <= centre) return (hz - left) / (centre - left);
  return (right - hz) / (right - centre);
}

std::vector<double> MelFilterbank::Apply(std::span<const double> power) const {
  if (power.size() != NumBins())
    throw DimensionMismatch("spectrum has " + std::to_string(power.size()) +
                            " bins, filterbank expects " +
                            std::to_string(NumBins()));
  Eigen::Map<const Vector> p(power.data(), static_cast<Eigen::Index>(power.size()));
  std::vector<double> out(num_filters_);
  for (int j = 0; j < num_filters_; ++j) out[j] = weights_[j].dot(p);
  return out;
}

std::vector<double> LogCompress(std::span<const double> energies) {
  std::vector<double> out(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i)
    out[i] = std::log(std::max(energies[i], kLogEnergyFloor));
  return out;
}

std::vector<double> Dct(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> c(n, 0.0);
  if (n == 0) return c;
  const double s0 = std::sqrt(1.0 / n), sk = std::sqrt(2.0 / n);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      acc += x[i] * std::cos(std::numbers::pi * k * (2.0 * i + 1.0) / (2.0 * n));
    c[k] = (k == 0 ? s0 : sk) * acc;
  }
  return c;
}

std::vector<double> InverseDct(std::span<const double> c) {
  const std::size_t n = c.size();
  std::vector<double> x(n, 0.0);
  if (n == 0) return x;
  const double s0 = std::sqrt(1.0 / n), sk = std::sqrt(2.0 / n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = s0 * c[0];
    for (std::size_t k = 1; k < n; ++k)
      acc += sk * c[k] *
             std::cos(std::numbers::pi * k * (2.0 * i + 1.0) / (2.0 * n));
    x[i] = acc;
  }
  return x;
}

std::vector<double> DctCepstra(std::span<const double> log_energies,
                               int num_ceps) {
  if (num_ceps < 0 || static_cast<std::size_t>(num_ceps) >= log_energies.size())
    throw InvalidArgument("num_ceps must be below the number of filters");
  std::vector<double> full = Dct(log_energies);
  return {full.begin() + 1, full.begin() + 1 + num_ceps};
}

RowMatrix Deltas(const RowMatrix& track, int span) {
  if (span < 1) throw InvalidArgument("delta span must be >= 1");
  const Eigen::Index n = track.rows();
  if (n < 2 * span + 1)
    throw InvalidArgument("track of " + std::to_string(n) +
                          " frames is shorter than 2*span+1 = " +
                          std::to_string(2 * span + 1));
  double denom = 0.0;
  for (int d = 1; d <= span; ++d) denom += d * d;
  denom *= 2.0;
  RowMatrix out(n, track.cols());
  for (Eigen::Index t = 0; t < n; ++t) {
    out.row(t).setZero();
    for (int d = 1; d <= span; ++d) {
      const Eigen::Index ahead = std::min<Eigen::Index>(t + d, n - 1);
      const Eigen::Index behind = std::max<Eigen::Index>(t - d, 0);
      out.row(t) += d * (track.row(ahead) - track.row(behind));
    }
    out.row(t) /= denom;
  }
  return out;
}

MfccExtractor::MfccExtractor(const MfccConfig& config, int sample_rate)
    : config_(config),
      sample_rate_(sample_rate),
      frame_length_((config.Validate(sample_rate),
                     config.framing.LengthSamples(sample_rate))),
      frame_shift_(config.framing.ShiftSamples(sample_rate)),
      window_(HammingWindow(frame_length_)),
      filterbank_(config.num_filters, config.band_low_hz, config.band_high_hz,
                  sample_rate, NextPowerOfTwo(frame_length_)) {}

std::vector<double> MfccExtractor::StaticCepstra(
    std::span<const double> frame) const {
  if (frame.size() != frame_length_)
    throw DimensionMismatch("frame length does not match extractor");
  std::vector<double> windowed(frame.begin(), frame.end());
  for (std::size_t i = 0; i < windowed.size(); ++i) windowed[i] *= window_[i];
  const std::vector<double> energies = filterbank_.Apply(PowerSpectrum(windowed));
  return DctCepstra(LogCompress(energies), config_.num_ceps);
}

RowMatrix MfccExtractor::StaticTrack(const AudioBuffer& buffer) const {
  if (buffer.sample_rate != sample_rate_)
    throw InvalidArgument(buffer.source_id + ": sample rate " +
                          std::to_string(buffer.sample_rate) +
                          " differs from extractor rate " +
                          std::to_string(sample_rate_));
  const std::size_t num_frames =
      config_.framing.NumFrames(buffer.samples.size(), sample_rate_);
  if (num_frames == 0)
    throw InvalidArgument(buffer.source_id + ": shorter than one frame");
  RowMatrix track(static_cast<Eigen::Index>(num_frames), config_.num_ceps);
  for (std::size_t f = 0; f < num_frames; ++f) {
    std::span<const double> frame(buffer.samples.data() + f * frame_shift_,
                                  frame_length_);
    const std::vector<double> ceps = StaticCepstra(frame);
    for (int c = 0; c < config_.num_ceps; ++c)
      track(static_cast<Eigen::Index>(f), c) = ceps[c];
  }
  return track;
}

FeatureMatrix MfccExtractor::Extract(const AudioBuffer& buffer,
                                     const VadMask& mask) const {
  if (!(mask.framing == config_.framing))
    throw InvalidArgument(buffer.source_id +
                          ": VAD framing differs from feature framing");
  const RowMatrix statics = StaticTrack(buffer);
  if (mask.NumFrames() != static_cast<std::size_t>(statics.rows()))
    throw DimensionMismatch(buffer.source_id + ": VAD mask has " +
                            std::to_string(mask.NumFrames()) + " flags for " +
                            std::to_string(statics.rows()) + " frames");

  std::vector<const RowMatrix*> blocks{&statics};
  RowMatrix delta, delta2;
  if (config_.include_deltas || config_.include_double_deltas) {
    delta = Deltas(statics, config_.delta_span_frames);
    if (config_.include_deltas) blocks.push_back(&delta);
    if (config_.include_double_deltas) {
      delta2 = Deltas(delta, config_.delta_span_frames);
      blocks.push_back(&delta2);
    }
  }

  FeatureMatrix out;
  out.framing = config_.framing;
  out.stage = FeatureStage::kRaw;
  const std::size_t kept = mask.NumSpeechFrames();
  if (kept == 0)
    throw NoSpeechError(buffer.source_id + ": no speech frames after VAD");
  out.vectors.resize(static_cast<Eigen::Index>(kept), config_.OutputDim());
  out.frame_index.reserve(kept);
  Eigen::Index row = 0;
  for (Eigen::Index t = 0; t < statics.rows(); ++t) {
    if (!mask.frame_flags[static_cast<std::size_t>(t)]) continue;
    Eigen::Index col = 0;
    for (const RowMatrix* b : blocks) {
      out.vectors.block(row, col, 1, b->cols()) = b->row(t);
      col += b->cols();
    }
    out.frame_index.push_back(t);
    ++row;
  }
  return out;
}

FeatureMatrix ExtractFeatures(const AudioBuffer& buffer, const VadMask& mask,
                              const MfccConfig& config) {
  return MfccExtractor(config, buffer.sample_rate).Extract(buffer, mask);
}

}  // namespace fvc
