// fvc/src/pipeline/config.cc

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

#include "fvc/pipeline/config.h"

#include <fstream>
#include <sstream>

#include "fvc/base/hash.h"
#include "json.hpp"

namespace fvc {

using nlohmann::json;

namespace {

json MfccJson(const MfccConfig& c) {
  return json{{"frame_length_ms", c.framing.frame_length_ms},
              {"frame_shift_ms", c.framing.frame_shift_ms},
              {"num_filters", c.num_filters},
              {"band_low_hz", c.band_low_hz},
              {"band_high_hz", c.band_high_hz},
              {"num_ceps", c.num_ceps},
              {"delta_span_frames", c.delta_span_frames},
              {"deltas", c.include_deltas},
              {"double_deltas", c.include_double_deltas}};
}

json FeatureJson(const PipelineConfig& c) {
  return json{{"mfcc", MfccJson(c.mfcc)},
              {"vad_threshold_db", c.vad_threshold_db},
              {"compensation", std::string(CompensationName(c.compensation))},
              {"warp_half_window_frames", c.warp.half_window_frames}};
}

// Reads obj[key] into out if present, then erases it so leftovers can be
// reported as unknown.
template <typename T>
void Take(json& obj, const char* key, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config key '") + key + "': " + e.what());
  }
  obj.erase(it);
}

void RejectLeftovers(const json& obj, const std::string& where) {
  if (!obj.empty())
    throw InvalidArgument("unknown config key '" + where + obj.begin().key() + "'");
}

json Section(json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) return json::object();
  if (!it->is_object())
    throw InvalidArgument(std::string("config section '") + key + "' must be an object");
  json s = *it;
  obj.erase(it);
  return s;
}

}  // namespace

std::string_view ScoringPathName(ScoringPath p) {
  return p == ScoringPath::kGmmUbm ? "gmm-ubm" : "ivector-plda";
}

ScoringPath ParseScoringPath(std::string_view s) {
  if (s == "gmm-ubm") return ScoringPath::kGmmUbm;
  if (s == "ivector-plda") return ScoringPath::kIvectorPlda;
  throw InvalidArgument("unknown scoring path '" + std::string(s) +
                        "' (expected gmm-ubm or ivector-plda)");
}

std::string PipelineConfig::ToJson() const {
  json j = FeatureJson(*this);
  j["ubm"] = json{{"components", ubm.num_components},
                  {"max_iterations", ubm.max_iterations},
                  {"convergence_threshold", ubm.convergence_threshold},
                  {"variance_floor_factor", ubm.variance_floor_factor}};
  j["relevance_factor"] = relevance_factor;
  j["ivector"] = json{{"dim", ivector.ivector_dim},
                      {"iterations", ivector.iterations},
                      {"minimum_divergence", ivector.minimum_divergence}};
  j["cldf_dim"] = cldf_dim;
  j["calibration"] = std::string(CalibrationMethodName(calibration));
  j["path"] = std::string(ScoringPathName(path));
  j["seed"] = seed;
  return j.dump(2);
}

std::string PipelineConfig::Hash() const { return Sha256Hex(ToJson()); }

std::string PipelineConfig::FeatureHash() const {
  return Sha256Hex(FeatureJson(*this).dump());
}

void PipelineConfig::DeriveSeeds() {
  ubm.seed = seed;
  ivector.seed = seed ^ 0x9e3779b97f4a7c15ULL;
}

PipelineConfig ParseConfig(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  PipelineConfig c;
  json mfcc = Section(j, "mfcc");
  Take(mfcc, "frame_length_ms", c.mfcc.framing.frame_length_ms);
  Take(mfcc, "frame_shift_ms", c.mfcc.framing.frame_shift_ms);
  Take(mfcc, "num_filters", c.mfcc.num_filters);
  Take(mfcc, "band_low_hz", c.mfcc.band_low_hz);
  Take(mfcc, "band_high_hz", c.mfcc.band_high_hz);
  Take(mfcc, "num_ceps", c.mfcc.num_ceps);
  Take(mfcc, "delta_span_frames", c.mfcc.delta_span_frames);
  Take(mfcc, "deltas", c.mfcc.include_deltas);
  Take(mfcc, "double_deltas", c.mfcc.include_double_deltas);
  RejectLeftovers(mfcc, "mfcc.");
  Take(j, "vad_threshold_db", c.vad_threshold_db);
  std::string comp(CompensationName(c.compensation));
  Take(j, "compensation", comp);
  c.compensation = ParseCompensation(comp);
  Take(j, "warp_half_window_frames", c.warp.half_window_frames);
  json ubm = Section(j, "ubm");
  Take(ubm, "components", c.ubm.num_components);
  Take(ubm, "max_iterations", c.ubm.max_iterations);
  Take(ubm, "convergence_threshold", c.ubm.convergence_threshold);
  Take(ubm, "variance_floor_factor", c.ubm.variance_floor_factor);
  RejectLeftovers(ubm, "ubm.");
  Take(j, "relevance_factor", c.relevance_factor);
  json iv = Section(j, "ivector");
  Take(iv, "dim", c.ivector.ivector_dim);
  Take(iv, "iterations", c.ivector.iterations);
  Take(iv, "minimum_divergence", c.ivector.minimum_divergence);
  RejectLeftovers(iv, "ivector.");
  Take(j, "cldf_dim", c.cldf_dim);
  std::string calib(CalibrationMethodName(c.calibration));
  Take(j, "calibration", calib);
  c.calibration = ParseCalibrationMethod(calib);
  std::string path(ScoringPathName(c.path));
  Take(j, "path", path);
  c.path = ParseScoringPath(path);
  Take(j, "seed", c.seed);
  RejectLeftovers(j, "");

  if (c.ubm.num_components < 1) throw InvalidArgument("ubm.components must be >= 1");
  if (c.ivector.ivector_dim < 1) throw InvalidArgument("ivector.dim must be >= 1");
  if (c.ivector.iterations < 1) throw InvalidArgument("ivector.iterations must be >= 1");
  if (!(c.relevance_factor >= 0.0)) throw InvalidArgument("relevance_factor must be >= 0");
  if (c.warp.half_window_frames < 1)
    throw InvalidArgument("warp_half_window_frames must be >= 1");
  c.DeriveSeeds();
  return c;
}

PipelineConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("cannot open config " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return ParseConfig(ss.str());
}

}  // namespace fvc
