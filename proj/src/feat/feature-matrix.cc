// fvc/src/feat/feature-matrix.cc

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

#include "fvc/feat/feature-matrix.h"

#include <fstream>

#include "fvc/base/error.h"

namespace fvc {

namespace {
constexpr std::string_view kFeatureMagic = "FVCF";
constexpr uint32_t kFeatureVersion = 1;
}  // namespace

std::string_view StageName(FeatureStage stage) {
  return stage == FeatureStage::kRaw ? "raw" : "compensated";
}

FeatureStage ParseStage(std::string_view name) {
  if (name == "raw") return FeatureStage::kRaw;
  if (name == "compensated") return FeatureStage::kCompensated;
  throw FormatError("unknown feature stage '" + std::string(name) + "'");
}

void WriteFeatures(const std::filesystem::path& path, const FeatureMatrix& f,
                   const Sidecar& extra) {
  if (!f.vectors.allFinite())
    throw NumericalError("refusing to write non-finite features to " +
                         path.string());
  {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path.string());
    BinaryWriter w(os);
    w.Header(kFeatureMagic, kFeatureVersion);
    w.U32(static_cast<uint32_t>(f.Dim()));
    w.U32(static_cast<uint32_t>(f.NumFrames()));
    for (Eigen::Index r = 0; r < f.NumFrames(); ++r)
      for (Eigen::Index c = 0; c < f.Dim(); ++c)
        w.F32(static_cast<float>(f.vectors(r, c)));
  }
  Sidecar side = extra;
  side["format"] = "fvc-features";
  side["version"] = std::to_string(kFeatureVersion);
  side["stage"] = std::string(StageName(f.stage));
  side["dims"] = std::to_string(f.Dim());
  side["frames"] = std::to_string(f.NumFrames());
  side["frame_length_ms"] = std::to_string(f.framing.frame_length_ms);
  side["frame_shift_ms"] = std::to_string(f.framing.frame_shift_ms);
  WriteSidecar(path, side);
}

FeatureMatrix ReadFeatures(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  BinaryReader r(is, path.string());
  r.Header(kFeatureMagic, kFeatureVersion);
  const uint32_t dims = r.U32();
  const uint32_t frames = r.U32();
  FeatureMatrix f;
  f.vectors.resize(frames, dims);
  for (uint32_t i = 0; i < frames; ++i)
    for (uint32_t j = 0; j < dims; ++j) f.vectors(i, j) = r.F32();
  r.ExpectEnd();
  const Sidecar side = ReadSidecar(path);
  if (auto it = side.find("stage"); it != side.end())
    f.stage = ParseStage(it->second);
  if (auto it = side.find("frame_length_ms"); it != side.end())
    f.framing.frame_length_ms = std::stod(it->second);
  if (auto it = side.find("frame_shift_ms"); it != side.end())
    f.framing.frame_shift_ms = std::stod(it->second);
  return f;
}

}  // namespace fvc
