// fvc/include/fvc/gmm/kmeans.h

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

#ifndef FVC_GMM_KMEANS_H_
#define FVC_GMM_KMEANS_H_

#include <cstdint>
#include <vector>

#include "fvc/base/error.h"
#include "fvc/base/types.h"
#include "fvc/gmm/diag-gmm.h"

namespace fvc {

/// Fewer distinct data points than requested clusters/components.
class InsufficientDataError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct KMeansResult {
  Matrix centroids;             // k x M
  std::vector<int> assignment;  // one cluster per row of the data
  int iterations = 0;
};

Eigen::Index CountDistinctRows(const RowMatrix& data);

/// k-means++ seeding followed by Lloyd iterations until the assignment stops
/// changing (or max_iterations). An emptied cluster keeps its centroid.
KMeansResult KMeans(const RowMatrix& data, int k, uint64_t seed,
                    int max_iterations = 100);

/// Initial GMM: k-means centroids as means, the whole-data per-dimension
/// variance for every component, equal weights.
DiagGmm KMeansInit(const RowMatrix& data, int num_components, uint64_t seed);

}  // namespace fvc

#endif  // FVC_GMM_KMEANS_H_
