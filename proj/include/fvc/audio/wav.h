// fvc/include/fvc/audio/wav.h

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

#ifndef FVC_AUDIO_WAV_H_
#define FVC_AUDIO_WAV_H_

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "fvc/base/error.h"

namespace fvc {

/// Mono audio, amplitudes normalized to [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 0;
  std::string source_id;

  double DurationSeconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

class WavError : public FormatError {
 public:
  using FormatError::FormatError;
};

/// Not linear PCM at 8/16/24 bits.
class UnsupportedEncodingError : public WavError {
 public:
  using WavError::WavError;
};

class MultiChannelError : public WavError {
 public:
  using WavError::WavError;
};

class TruncatedFileError : public WavError {
 public:
  using WavError::WavError;
};

/// Sample rates below 8 kHz are rejected; nothing is resampled.
class UnsupportedSampleRateError : public WavError {
 public:
  using WavError::WavError;
};

inline constexpr int kMinSampleRate = 8000;

/// Reads a RIFF/WAVE linear-PCM mono file. Integer samples are divided by
/// 2^(bits-1), so full-scale positive maps just below +1 and the most
/// negative code maps to exactly -1. 8-bit data is unsigned with offset 128.
AudioBuffer ReadWav(const std::filesystem::path& path);
AudioBuffer ReadWav(std::istream& is, const std::string& source_id);

/// Writes 16-bit PCM mono; samples are clamped to [-1, 1] and rounded.
void WriteWav16(const std::filesystem::path& path, const AudioBuffer& buffer);

}  // namespace fvc

#endif  // FVC_AUDIO_WAV_H_
