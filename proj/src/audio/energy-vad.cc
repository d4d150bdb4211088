// fvc/src/audio/energy-vad.cc

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

#include "fvc/audio/energy-vad.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "fvc/base/error.h"

namespace fvc {

std::size_t VadMask::NumSpeechFrames() const {
  return static_cast<std::size_t>(
      std::count(frame_flags.begin(), frame_flags.end(), true));
}

std::vector<double> FrameRms(const AudioBuffer& buffer, const Framing& framing) {
  const std::size_t num_frames =
      framing.NumFrames(buffer.samples.size(), buffer.sample_rate);
  if (num_frames == 0)
    throw InvalidArgument(buffer.source_id +
                          ": audio shorter than one analysis frame");
  const std::size_t len = framing.LengthSamples(buffer.sample_rate);
  const std::size_t shift = framing.ShiftSamples(buffer.sample_rate);
  std::vector<double> rms(num_frames);
  for (std::size_t f = 0; f < num_frames; ++f) {
    const double* p = buffer.samples.data() + f * shift;
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += p[i] * p[i];
    rms[f] = std::sqrt(acc / static_cast<double>(len));
  }
  return rms;
}

VadMask EnergyVad(const AudioBuffer& buffer, const Framing& framing,
                  double threshold_db_below_peak) {
  if (!(threshold_db_below_peak >= 0.0))
    throw InvalidArgument("VAD threshold must be non-negative");
  const std::vector<double> rms = FrameRms(buffer, framing);
  VadMask mask{std::vector<bool>(rms.size(), false), framing};
  const double peak = *std::max_element(rms.begin(), rms.end());
  if (peak <= 0.0) return mask;
  for (std::size_t f = 0; f < rms.size(); ++f) {
    if (rms[f] <= 0.0) continue;
    const double level_db = 20.0 * std::log10(rms[f] / peak);
    mask.frame_flags[f] = level_db >= -threshold_db_below_peak;
  }
  return mask;
}

VadSegments ReadVadSegments(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open VAD sidecar " + path.string());
  VadSegments segments;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double start, end;
    if (!(ls >> start >> end) || end < start || start < 0.0)
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 'start end' in seconds");
    segments.emplace_back(start, end);
  }
  return segments;
}

VadMask MaskFromSegments(const VadSegments& segments, std::size_t num_samples,
                         int sample_rate, const Framing& framing) {
  const std::size_t num_frames = framing.NumFrames(num_samples, sample_rate);
  if (num_frames == 0)
    throw InvalidArgument("audio shorter than one analysis frame");
  const double len = static_cast<double>(framing.LengthSamples(sample_rate));
  const double shift = static_cast<double>(framing.ShiftSamples(sample_rate));
  VadMask mask{std::vector<bool>(num_frames, false), framing};
  for (std::size_t f = 0; f < num_frames; ++f) {
    const double centre = (f * shift + 0.5 * len) / sample_rate;
    for (const auto& [start, end] : segments) {
      if (centre >= start && centre < end) {
        mask.frame_flags[f] = true;
        break;
      }
    }
  }
  return mask;
}

}  // namespace fvc
