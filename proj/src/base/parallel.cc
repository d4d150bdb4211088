// fvc/src/base/parallel.cc

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

#include "fvc/base/parallel.h"

#include <algorithm>
#include <atomic>
#include <thread>

namespace fvc {

namespace {
std::atomic<int> g_num_threads{
    static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))};
}

void SetNumThreads(int n) { g_num_threads = std::max(1, n); }

int NumThreads() { return g_num_threads; }

}  // namespace fvc
