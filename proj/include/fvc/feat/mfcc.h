// fvc/include/fvc/feat/mfcc.h

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

#ifndef FVC_FEAT_MFCC_H_
#define FVC_FEAT_MFCC_H_

#include <cstddef>
#include <span>
#include <vector>

#include "fvc/audio/energy-vad.h"
#include "fvc/audio/framing.h"
#include "fvc/audio/wav.h"
#include "fvc/base/error.h"
#include "fvc/base/types.h"
#include "fvc/feat/feature-matrix.h"

namespace fvc {

struct MfccConfig {
  Framing framing;             // 20 ms frames every 10 ms
  int num_filters = 26;
  double band_low_hz = 300.0;
  double band_high_hz = 3400.0;
  int num_ceps = 14;           // coefficients 1..num_ceps; c0 is dropped
  int delta_span_frames = 2;
  bool include_deltas = true;
  bool include_double_deltas = true;

  int OutputDim() const {
    return num_ceps * (1 + (include_deltas ? 1 : 0) +
                       (include_double_deltas ? 1 : 0));
  }
  /// Throws InvalidArgument when the config cannot be used at sample_rate.
  void Validate(int sample_rate) const;
};

/// Thrown when masking removes every frame of a recording.
class NoSpeechError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

inline constexpr double kLogEnergyFloor = 1e-10;

double MelScale(double hz);
double InverseMelScale(double mel);

/// Hamming window w[n] = 0.54 - 0.46 cos(2 pi n / (N - 1)).
std::vector<double> HammingWindow(std::size_t n);
std::vector<double> WindowFrame(std::span<const double> frame);

std::size_t NextPowerOfTwo(std::size_t n);

/// |DFT|^2 for bins 0..N/2 after zero-padding to the next power of two N.
std::vector<double> PowerSpectrum(std::span<const double> frame);

/// Unit-height triangular filters, centres equally spaced in mel between the
/// band edges; neighbouring filters overlap by half.
class MelFilterbank {
 public:
  MelFilterbank(int num_filters, double low_hz, double high_hz,
                int sample_rate, std::size_t fft_size);

  int NumFilters() const { return num_filters_; }
  std::size_t NumBins() const { return fft_size_ / 2 + 1; }
  double BinHz(std::size_t bin) const {
    return static_cast<double>(bin) * sample_rate_ / static_cast<double>(fft_size_);
  }
  double CenterHz(int j) const { return edges_hz_[j + 1]; }
  /// Triangle j evaluated at an arbitrary frequency.
  double Weight(int j, double hz) const;
  /// Filter j's weights over the spectrum bins.
  const Vector& Weights(int j) const { return weights_[j]; }

  std::vector<double> Apply(std::span<const double> power) const;

 private:
  int num_filters_;
  int sample_rate_;
  std::size_t fft_size_;
  std::vector<double> edges_hz_;  // num_filters + 2 points
  std::vector<Vector> weights_;
};

/// ln(max(e, kLogEnergyFloor)) elementwise.
std::vector<double> LogCompress(std::span<const double> energies);

/// Orthonormal DCT-II and its inverse (DCT-III), full length.
std::vector<double> Dct(std::span<const double> x);
std::vector<double> InverseDct(std::span<const double> c);

/// Orthonormal DCT-II coefficients 1..num_ceps (c0 discarded).
std::vector<double> DctCepstra(std::span<const double> log_energies, int num_ceps);

/// Least-squares slope over t-span..t+span for every column; edges use
/// replicated first/last rows. Throws InvalidArgument if there are fewer
/// than 2*span+1 rows.
RowMatrix Deltas(const RowMatrix& track, int span);

/// Per-frame MFCC computation for a fixed sample rate.
class MfccExtractor {
 public:
  MfccExtractor(const MfccConfig& config, int sample_rate);

  std::vector<double> StaticCepstra(std::span<const double> frame) const;

  /// Static cepstra (no deltas) for every frame of the buffer, unmasked.
  RowMatrix StaticTrack(const AudioBuffer& buffer) const;

  /// Full pipeline: statics, deltas and double deltas over the whole frame
  /// sequence, then non-speech frames removed. Stage is raw.
  FeatureMatrix Extract(const AudioBuffer& buffer, const VadMask& mask) const;

  const MfccConfig& config() const { return config_; }
  const MelFilterbank& filterbank() const { return filterbank_; }

 private:
  MfccConfig config_;
  int sample_rate_;
  std::size_t frame_length_;
  std::size_t frame_shift_;
  std::vector<double> window_;
  MelFilterbank filterbank_;
};

FeatureMatrix ExtractFeatures(const AudioBuffer& buffer, const VadMask& mask,
                              const MfccConfig& config);

}  // namespace fvc

#endif  // FVC_FEAT_MFCC_H_
