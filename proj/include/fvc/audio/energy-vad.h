// fvc/include/fvc/audio/energy-vad.h

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

#ifndef FVC_AUDIO_ENERGY_VAD_H_
#define FVC_AUDIO_ENERGY_VAD_H_

#include <cstddef>
#include <filesystem>
#include <utility>
#include <vector>

#include "fvc/audio/framing.h"
#include "fvc/audio/wav.h"

namespace fvc {

/// One flag per analysis frame; true marks speech.
struct VadMask {
  std::vector<bool> frame_flags;
  Framing framing;

  std::size_t NumFrames() const { return frame_flags.size(); }
  std::size_t NumSpeechFrames() const;
};

inline constexpr double kDefaultVadThresholdDb = 30.0;

/// A frame is speech iff its RMS level is within threshold_db_below_peak of
/// the loudest frame. Each frame is judged on its own RMS (no hangover).
/// All-zero input gives an all-false mask. Throws InvalidArgument when the
/// buffer is shorter than one frame.
VadMask EnergyVad(const AudioBuffer& buffer, const Framing& framing,
                  double threshold_db_below_peak = kDefaultVadThresholdDb);

/// Per-frame RMS amplitude, exposed for diagnostics.
std::vector<double> FrameRms(const AudioBuffer& buffer, const Framing& framing);

/// Speech segments [start, end) in seconds.
using VadSegments = std::vector<std::pair<double, double>>;

/// Reads a manual-VAD sidecar: one "start end" pair (seconds) per line;
/// blank lines and lines starting with '#' are skipped.
VadSegments ReadVadSegments(const std::filesystem::path& path);

/// A frame is speech iff its centre time lies in some segment.
VadMask MaskFromSegments(const VadSegments& segments, std::size_t num_samples,
                         int sample_rate, const Framing& framing);

}  // namespace fvc

#endif  // FVC_AUDIO_ENERGY_VAD_H_
