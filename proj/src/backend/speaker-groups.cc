// fvc/src/backend/speaker-groups.cc

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

#include "fvc/backend/speaker-groups.h"

#include <unordered_map>

#include "fvc/base/error.h"

namespace fvc {

int SpeakerGroups::Dim() const {
  return members.empty() || members.front().empty()
             ? 0
             : static_cast<int>(members.front().front().size());
}

SpeakerGroups GroupBySpeaker(const std::vector<Vector>& vectors,
                             const std::vector<std::string>& speaker_ids) {
  if (vectors.size() != speaker_ids.size())
    throw DimensionMismatch("embedding and label counts differ");
  SpeakerGroups out;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (speaker_ids[i].empty()) throw InvalidArgument("empty speaker label");
    if (!vectors.empty() && vectors[i].size() != vectors.front().size())
      throw DimensionMismatch("embeddings differ in dimension");
    if (!vectors[i].allFinite()) throw NumericalError("non-finite embedding");
    auto [it, inserted] = index.emplace(speaker_ids[i], out.speakers.size());
    if (inserted) {
      out.speakers.push_back(speaker_ids[i]);
      out.members.emplace_back();
    }
    out.members[it->second].push_back(vectors[i]);
  }
  return out;
}

SpeakerGroups GroupBySpeaker(const std::vector<Embedding>& embeddings,
                             const std::vector<std::string>& speaker_ids) {
  std::vector<Vector> v;
  v.reserve(embeddings.size());
  for (const Embedding& e : embeddings) v.push_back(e.values);
  return GroupBySpeaker(v, speaker_ids);
}

}  // namespace fvc
