// fvc/include/fvc/ivector/embedding.h

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

#ifndef FVC_IVECTOR_EMBEDDING_H_
#define FVC_IVECTOR_EMBEDDING_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fvc/base/types.h"

namespace fvc {

enum class EmbeddingStage { kRawIvector, kWhitened, kCldf };

std::string_view EmbeddingStageName(EmbeddingStage stage);
EmbeddingStage ParseEmbeddingStage(std::string_view name);

/// Fixed-length per-recording vector.
struct Embedding {
  std::string recording_id;
  Vector values;
  EmbeddingStage stage = EmbeddingStage::kRawIvector;
};

/// CSV rows: recording_id,stage,v1,...,vR (values printed with 17
/// significant digits, so a read-back is exact).
void WriteEmbeddingsCsv(const std::filesystem::path& path,
                        const std::vector<Embedding>& embeddings);
std::vector<Embedding> ReadEmbeddingsCsv(const std::filesystem::path& path);

}  // namespace fvc

#endif  // FVC_IVECTOR_EMBEDDING_H_
