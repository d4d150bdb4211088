// fvc/src/pipeline/manifest.cc

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

#include "fvc/pipeline/manifest.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fvc {

namespace {

std::string Trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(Trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string_view ConditionName(Condition c) {
  switch (c) {
    case Condition::kQuestionedLike: return "questioned-like";
    case Condition::kKnownLike: return "known-like";
    default: return "other";
  }
}

Condition ParseCondition(std::string_view s) {
  if (s == "questioned-like") return Condition::kQuestionedLike;
  if (s == "known-like") return Condition::kKnownLike;
  if (s == "other") return Condition::kOther;
  throw InvalidArgument("unknown condition tag '" + std::string(s) + "'");
}

std::string_view SplitName(Split s) {
  switch (s) {
    case Split::kUbm: return "ubm";
    case Split::kPopulation: return "population";
    case Split::kCalibration: return "calibration";
    case Split::kTest: return "test";
    default: return "case";
  }
}

Split ParseSplit(std::string_view s) {
  if (s == "ubm") return Split::kUbm;
  if (s == "population") return Split::kPopulation;
  if (s == "calibration") return Split::kCalibration;
  if (s == "test") return Split::kTest;
  if (s == "case") return Split::kCase;
  throw InvalidArgument("unknown split '" + std::string(s) + "'");
}

std::vector<ManifestRow> Manifest::InSplit(Split s) const {
  std::vector<ManifestRow> out;
  for (const ManifestRow& r : rows)
    if (r.split == s) out.push_back(r);
  return out;
}

std::vector<ManifestRow> Manifest::UniqueRecordings() const {
  std::vector<ManifestRow> out;
  std::set<std::filesystem::path> seen;
  for (const ManifestRow& r : rows)
    if (seen.insert(r.recording_path).second) out.push_back(r);
  return out;
}

void CheckSplitHygiene(const Manifest& m) {
  std::map<std::string, std::set<Split>> splits;
  for (const ManifestRow& r : m.rows)
    if (r.split == Split::kPopulation || r.split == Split::kCalibration ||
        r.split == Split::kTest)
      splits[r.speaker_id].insert(r.split);
  std::string bad;
  for (const auto& [spk, s] : splits) {
    if (s.size() < 2) continue;
    if (!bad.empty()) bad += "; ";
    bad += spk + " (";
    bool first = true;
    for (Split x : s) {
      bad += (first ? "" : ", ") + std::string(SplitName(x));
      first = false;
    }
    bad += ")";
  }
  if (!bad.empty())
    throw SplitHygieneError(
        "speakers appear in more than one of population/calibration/test: " + bad);
}

Manifest LoadManifest(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("cannot open manifest " + path.string());
  const std::filesystem::path base = std::filesystem::absolute(path).parent_path();
  std::string line;
  if (!std::getline(is, line) ||
      SplitCsv(line) != std::vector<std::string>{"recording_path", "speaker_id",
                                                 "condition", "split"})
    throw FormatError(path.string() +
                      ": header must be recording_path,speaker_id,condition,split");
  Manifest m;
  std::map<std::string, std::filesystem::path> ids;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    const auto f = SplitCsv(line);
    const std::string where = path.string() + ":" + std::to_string(lineno) + ": ";
    if (f.size() != 4) throw FormatError(where + "expected 4 fields");
    ManifestRow r;
    r.recording_path = std::filesystem::path(f[0]);
    if (r.recording_path.is_relative()) r.recording_path = base / r.recording_path;
    r.recording_path = r.recording_path.lexically_normal();
    if (!std::filesystem::exists(r.recording_path))
      throw InvalidArgument(where + "recording not found: " + r.recording_path.string());
    if (f[1].empty()) throw InvalidArgument(where + "empty speaker_id");
    r.speaker_id = f[1];
    try {
      r.condition = ParseCondition(f[2]);
      r.split = ParseSplit(f[3]);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(where + e.what());
    }
    auto [it, inserted] = ids.emplace(r.RecordingId(), r.recording_path);
    if (!inserted && it->second != r.recording_path)
      throw InvalidArgument(where + "recording id '" + r.RecordingId() +
                            "' is shared by two different paths");
    m.rows.push_back(std::move(r));
  }
  CheckSplitHygiene(m);
  return m;
}

void WriteManifest(const std::filesystem::path& path, const Manifest& m) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  const std::filesystem::path base = std::filesystem::absolute(path).parent_path();
  os << "recording_path,speaker_id,condition,split\n";
  for (const ManifestRow& r : m.rows) {
    std::filesystem::path p = r.recording_path;
    if (p.is_absolute()) p = p.lexically_relative(base);
    os << p.generic_string() << "," << r.speaker_id << "," << ConditionName(r.condition)
       << "," << SplitName(r.split) << "\n";
  }
}

}  // namespace fvc
