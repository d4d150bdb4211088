// fvc/include/fvc/gmm/map-adapt.h

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

#ifndef FVC_GMM_MAP_ADAPT_H_
#define FVC_GMM_MAP_ADAPT_H_

#include "fvc/base/types.h"
#include "fvc/gmm/diag-gmm.h"

namespace fvc {

/// Relevance factor commonly used for speaker models.
inline constexpr double kDefaultRelevanceFactor = 16.0;

struct MapAdaptation {
  DiagGmm model;
  Vector counts;     // n_g = sum_i gamma_gi against the UBM
  Vector alpha;      // n_g / (n_g + tau); 0 where n_g = 0
  Matrix em_means;   // data-dependent means; UBM mean where n_g = 0
};

/// One pass of mean-only MAP adaptation: mu_g = alpha_g mu_g,EM +
/// (1 - alpha_g) mu_g,UBM. Weights and variances are copied from the UBM.
MapAdaptation MapAdaptMeansDetailed(const DiagGmm& ubm, const RowMatrix& data,
                                    double tau);

DiagGmm MapAdaptMeans(const DiagGmm& ubm, const RowMatrix& data, double tau);

}  // namespace fvc

#endif  // FVC_GMM_MAP_ADAPT_H_
