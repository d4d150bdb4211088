// fvc/include/fvc/base/random.h

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

#ifndef FVC_BASE_RANDOM_H_
#define FVC_BASE_RANDOM_H_

#include <cstdint>
#include <random>

namespace fvc {

/// Seeded generator with platform-stable output.
///
/// std::mt19937_64 is fully specified by the standard, but the standard
/// distributions are not, so the conversions live here:
///  - Uniform(): top 53 bits of one engine draw, scaled by 2^-53, in [0, 1).
///  - Normal(): Box-Muller on two Uniform() draws; the second variate is
///    cached and returned by the next call.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Normal();

  double Normal(double mean, double stddev) { return mean + stddev * Normal(); }

  /// Uniform integer in [0, n).
  uint64_t Below(uint64_t n);

  uint64_t Next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace fvc

#endif  // FVC_BASE_RANDOM_H_
