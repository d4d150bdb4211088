// fvc/include/fvc/audio/framing.h

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

#ifndef FVC_AUDIO_FRAMING_H_
#define FVC_AUDIO_FRAMING_H_

#include <cmath>
#include <cstddef>

namespace fvc {

/// Analysis framing shared by the VAD and the feature extractor.
struct Framing {
  double frame_length_ms = 20.0;
  double frame_shift_ms = 10.0;

  std::size_t LengthSamples(int sample_rate) const {
    return static_cast<std::size_t>(
        std::lround(sample_rate * frame_length_ms / 1000.0));
  }
  std::size_t ShiftSamples(int sample_rate) const {
    return static_cast<std::size_t>(
        std::lround(sample_rate * frame_shift_ms / 1000.0));
  }
  /// floor((n - L) / S) + 1, or 0 when n < L.
  std::size_t NumFrames(std::size_t num_samples, int sample_rate) const {
    const std::size_t len = LengthSamples(sample_rate);
    const std::size_t shift = ShiftSamples(sample_rate);
    if (num_samples < len || len == 0 || shift == 0) return 0;
    return (num_samples - len) / shift + 1;
  }

  bool operator==(const Framing&) const = default;
};

}  // namespace fvc

#endif  // FVC_AUDIO_FRAMING_H_
