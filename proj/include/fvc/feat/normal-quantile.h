// fvc/include/fvc/feat/normal-quantile.h

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

#ifndef FVC_FEAT_NORMAL_QUANTILE_H_
#define FVC_FEAT_NORMAL_QUANTILE_H_

namespace fvc {

/// Inverse standard-normal CDF, Wichura's AS241 (PPND16) rational
/// approximation; about 1e-16 relative accuracy on (0, 1).
/// Returns -inf / +inf at 0 / 1 and NaN outside [0, 1].
double NormalQuantile(double p);

}  // namespace fvc

#endif  // FVC_FEAT_NORMAL_QUANTILE_H_
