// fvc/include/fvc/base/parallel.h

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

#ifndef FVC_BASE_PARALLEL_H_
#define FVC_BASE_PARALLEL_H_

#include <cstddef>

namespace fvc {

/// Thread count used by ParallelFor. 1 means strictly sequential.
void SetNumThreads(int n);
int NumThreads();

/// Runs body(i) for i in [0, n). Bodies must only write to slot i of
/// preallocated outputs; callers reduce the slots in index order, so results
/// do not depend on the thread count.
template <typename Body>
void ParallelFor(std::size_t n, Body&& body) {
  const int threads = NumThreads();
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
    body(static_cast<std::size_t>(i));
}

}  // namespace fvc

#endif  // FVC_BASE_PARALLEL_H_
