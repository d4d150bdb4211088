// fvc/include/fvc/eval/tippett-svg.h

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

#ifndef FVC_EVAL_TIPPETT_SVG_H_
#define FVC_EVAL_TIPPETT_SVG_H_

#include <string>

#include "fvc/eval/validation.h"

namespace fvc {

/// Deterministic SVG of the two Tippett step curves with axes and legend.
/// Coordinates are printed with fixed precision, so identical reports give
/// identical bytes.
std::string RenderTippettSvg(const ValidationReport& report);

}  // namespace fvc

#endif  // FVC_EVAL_TIPPETT_SVG_H_
