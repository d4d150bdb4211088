// fvc/src/gmm/map-adapt.cc

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

#include "fvc/gmm/map-adapt.h"

#include "fvc/base/error.h"
#include "fvc/gmm/em.h"

namespace fvc {

MapAdaptation MapAdaptMeansDetailed(const DiagGmm& ubm, const RowMatrix& data,
                                    double tau) {
  if (data.rows() == 0) throw InvalidArgument("MAP adaptation needs data");
  if (data.cols() != ubm.Dim())
    throw DimensionMismatch("adaptation data dim differs from UBM dim");
  if (!(tau >= 0.0)) throw InvalidArgument("relevance factor must be >= 0");
  const GmmStats stats = AccumulateGmmStats(ubm, data);
  MapAdaptation out;
  out.counts = stats.occupancy;
  out.alpha = Vector::Zero(ubm.NumComponents());
  out.em_means = ubm.means();
  Matrix means = ubm.means();
  for (int g = 0; g < ubm.NumComponents(); ++g) {
    const double n = stats.occupancy[g];
    if (!(n > 0.0)) continue;
    out.em_means.row(g) = stats.first.row(g) / n;
    const double alpha = n / (n + tau);
    out.alpha[g] = alpha;
    means.row(g) = alpha * out.em_means.row(g) + (1.0 - alpha) * ubm.means().row(g);
  }
  out.model = ubm.WithMeans(std::move(means));
  return out;
}

DiagGmm MapAdaptMeans(const DiagGmm& ubm, const RowMatrix& data, double tau) {
  return MapAdaptMeansDetailed(ubm, data, tau).model;
}

}  // namespace fvc
