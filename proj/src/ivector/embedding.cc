// fvc/src/ivector/embedding.cc

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

#include "fvc/ivector/embedding.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fvc/base/error.h"

namespace fvc {

std::string_view EmbeddingStageName(EmbeddingStage stage) {
  switch (stage) {
    case EmbeddingStage::kRawIvector: return "raw_ivector";
    case EmbeddingStage::kWhitened: return "whitened";
    case EmbeddingStage::kCldf: return "cldf";
  }
  return "?";
}

EmbeddingStage ParseEmbeddingStage(std::string_view name) {
  if (name == "raw_ivector") return EmbeddingStage::kRawIvector;
  if (name == "whitened") return EmbeddingStage::kWhitened;
  if (name == "cldf") return EmbeddingStage::kCldf;
  throw FormatError("unknown embedding stage '" + std::string(name) + "'");
}

void WriteEmbeddingsCsv(const std::filesystem::path& path,
                        const std::vector<Embedding>& embeddings) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  char buf[32];
  for (const Embedding& e : embeddings) {
    os << e.recording_id << ',' << EmbeddingStageName(e.stage);
    for (Eigen::Index i = 0; i < e.values.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", e.values[i]);
      os << ',' << buf;
    }
    os << '\n';
  }
}

std::vector<Embedding> ReadEmbeddingsCsv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path.string());
  std::vector<Embedding> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string id, stage, cell;
    std::getline(ls, id, ',');
    std::getline(ls, stage, ',');
    std::vector<double> values;
    while (std::getline(ls, cell, ',')) values.push_back(std::stod(cell));
    Embedding e;
    e.recording_id = id;
    e.stage = ParseEmbeddingStage(stage);
    e.values = Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace fvc
