// fvc/include/fvc/ivector/baum-welch.h

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

#ifndef FVC_IVECTOR_BAUM_WELCH_H_
#define FVC_IVECTOR_BAUM_WELCH_H_

#include <filesystem>
#include <string>

#include "fvc/base/binary-io.h"
#include "fvc/base/types.h"
#include "fvc/gmm/diag-gmm.h"

namespace fvc {

/// Zeroth- and centralized first-order statistics of one recording against
/// a UBM: n_g = sum_i gamma_gi, f_g = sum_i gamma_gi (x_i - mu_g).
struct BaumWelchStats {
  std::string recording_id;
  Vector counts;  // G
  Matrix first;   // G x M
  int64_t num_frames = 0;

  int NumComponents() const { return static_cast<int>(counts.size()); }
  int Dim() const { return static_cast<int>(first.cols()); }
};

BaumWelchStats AccumulateBaumWelch(const DiagGmm& ubm, const RowMatrix& frames,
                                   std::string recording_id = {});

/// "FVCS", u32 version, id, u32 G, u32 M, u64 frames, counts, first (f64).
void WriteBaumWelch(const std::filesystem::path& path, const BaumWelchStats& s,
                    const Sidecar& extra = {});
BaumWelchStats ReadBaumWelch(const std::filesystem::path& path);

}  // namespace fvc

#endif  // FVC_IVECTOR_BAUM_WELCH_H_
