// fvc/include/fvc/backend/speaker-groups.h

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

#ifndef FVC_BACKEND_SPEAKER_GROUPS_H_
#define FVC_BACKEND_SPEAKER_GROUPS_H_

#include <string>
#include <vector>

#include "fvc/base/types.h"
#include "fvc/ivector/embedding.h"

namespace fvc {

/// Embeddings grouped by speaker, in order of first appearance.
struct SpeakerGroups {
  std::vector<std::string> speakers;
  std::vector<std::vector<Vector>> members;
  int Dim() const;
  int NumSpeakers() const { return static_cast<int>(speakers.size()); }
};

/// Throws DimensionMismatch on inconsistent sizes or dimensions.
SpeakerGroups GroupBySpeaker(const std::vector<Embedding>& embeddings,
                             const std::vector<std::string>& speaker_ids);
SpeakerGroups GroupBySpeaker(const std::vector<Vector>& vectors,
                             const std::vector<std::string>& speaker_ids);

}  // namespace fvc

#endif  // FVC_BACKEND_SPEAKER_GROUPS_H_
