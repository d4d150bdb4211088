// fvc/src/gmm/kmeans.cc

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

#include "fvc/gmm/kmeans.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "fvc/base/random.h"

namespace fvc {

Eigen::Index CountDistinctRows(const RowMatrix& data) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(data.rows()));
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index c = 0; c < data.cols(); ++c) {
      if (data(a, c) != data(b, c)) return data(a, c) < data(b, c);
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less);
  Eigen::Index distinct = order.empty() ? 0 : 1;
  for (std::size_t i = 1; i < order.size(); ++i)
    if (less(order[i - 1], order[i])) ++distinct;
  return distinct;
}

KMeansResult KMeans(const RowMatrix& data, int k, uint64_t seed,
                    int max_iterations) {
  const Eigen::Index n = data.rows();
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (CountDistinctRows(data) < k)
    throw InsufficientDataError("k-means needs at least " + std::to_string(k) +
                                " distinct points");
  Rng rng(seed);
  KMeansResult result;
  result.centroids.resize(k, data.cols());

  // k-means++: first centre uniform, then proportional to squared distance.
  Vector dist2 = Vector::Constant(n, std::numeric_limits<double>::infinity());
  Eigen::Index pick = static_cast<Eigen::Index>(rng.Below(static_cast<uint64_t>(n)));
  for (int c = 0; c < k; ++c) {
    if (c > 0) {
      const double total = dist2.sum();
      double target = rng.Uniform() * total;
      pick = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (dist2[i] <= 0.0) continue;
        target -= dist2[i];
        if (target < 0.0) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {  // rounding left target marginally positive
        for (Eigen::Index i = n - 1; i >= 0; --i)
          if (dist2[i] > 0.0) {
            pick = i;
            break;
          }
      }
    }
    result.centroids.row(c) = data.row(pick);
    for (Eigen::Index i = 0; i < n; ++i)
      dist2[i] = std::min(dist2[i],
                          (data.row(i) - result.centroids.row(c)).squaredNorm());
  }

  result.assignment.assign(static_cast<std::size_t>(n), -1);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best;
      (result.centroids.rowwise() - data.row(i)).rowwise().squaredNorm().minCoeff(&best);
      if (result.assignment[static_cast<std::size_t>(i)] != best) {
        result.assignment[static_cast<std::size_t>(i)] = static_cast<int>(best);
        changed = true;
      }
    }
    result.iterations = iter + 1;
    if (!changed) break;
    Matrix sums = Matrix::Zero(k, data.cols());
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int a = result.assignment[static_cast<std::size_t>(i)];
      sums.row(a) += data.row(i);
      ++counts[static_cast<std::size_t>(a)];
    }
    for (int c = 0; c < k; ++c)
      if (counts[static_cast<std::size_t>(c)] > 0)
        result.centroids.row(c) = sums.row(c) / double(counts[static_cast<std::size_t>(c)]);
  }
  return result;
}

DiagGmm KMeansInit(const RowMatrix& data, int num_components, uint64_t seed) {
  const KMeansResult km = KMeans(data, num_components, seed);
  const Eigen::RowVectorXd mean = data.colwise().mean();
  Eigen::RowVectorXd var =
      (data.rowwise() - mean).array().square().colwise().mean();
  // A constant dimension would give a zero variance; any positive value
  // works since the data cannot distinguish components along it.
  for (Eigen::Index d = 0; d < var.size(); ++d)
    if (!(var[d] > 0.0)) var[d] = 1.0;
  Matrix vars = var.replicate(num_components, 1);
  return DiagGmm(Vector::Constant(num_components, 1.0 / num_components),
                 km.centroids, vars);
}

}  // namespace fvc
