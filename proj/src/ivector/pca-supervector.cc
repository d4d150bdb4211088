// fvc/src/ivector/pca-supervector.cc

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

#include "fvc/ivector/pca-supervector.h"

#include <cmath>

#include "fvc/base/error.h"

namespace fvc {

PcaSupervector::PcaSupervector(Vector ubm_supervector, Matrix components,
                               Vector variances)
    : ubm_supervector_(std::move(ubm_supervector)),
      components_(std::move(components)),
      variances_(std::move(variances)) {
  if (components_.rows() != ubm_supervector_.size())
    throw DimensionMismatch("PCA components do not match the supervector dim");
}

Vector PcaSupervector::Project(const Vector& supervector) const {
  if (supervector.size() != ubm_supervector_.size())
    throw DimensionMismatch("supervector dim mismatch in PCA projection");
  return components_.transpose() * (supervector - ubm_supervector_);
}

Embedding PcaSupervector::Project(const DiagGmm& adapted,
                                  std::string recording_id) const {
  return Embedding{std::move(recording_id), Project(adapted.MeanSupervector()),
                   EmbeddingStage::kRawIvector};
}

PcaSupervector FitPcaSupervector(const DiagGmm& ubm,
                                 const std::vector<DiagGmm>& adapted, int r) {
  if (adapted.empty()) throw InvalidArgument("PCA needs adapted models");
  if (r < 1) throw InvalidArgument("PCA dimension must be >= 1");
  const Vector m = ubm.MeanSupervector();
  Matrix x(static_cast<Eigen::Index>(adapted.size()), m.size());
  for (std::size_t j = 0; j < adapted.size(); ++j) {
    const DiagGmm& g = adapted[j];
    if (!g.SameShape(ubm) || g.weights() != ubm.weights() ||
        g.variances() != ubm.variances())
      throw InvalidArgument("model " + std::to_string(j) +
                            " is not a mean-only adaptation of the UBM");
    x.row(static_cast<Eigen::Index>(j)) = (g.MeanSupervector() - m).transpose();
  }
  const Eigen::RowVectorXd centre = x.colwise().mean();
  const Matrix centered = x.rowwise() - centre;
  Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinV);
  const Vector sv = svd.singularValues();
  const double tol = sv.size() > 0 ? sv(0) * 1e-10 * static_cast<double>(
                                         std::max(x.rows(), x.cols()))
                                   : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  if (r > rank)
    throw InvalidArgument("PCA dimension " + std::to_string(r) +
                          " exceeds the rank " + std::to_string(rank) +
                          " of the training supervectors");
  Matrix comps = svd.matrixV().leftCols(r);
  // Fix the sign so the largest-magnitude entry of each component is positive.
  for (int c = 0; c < r; ++c) {
    Eigen::Index idx;
    comps.col(c).cwiseAbs().maxCoeff(&idx);
    if (comps(idx, c) < 0) comps.col(c) *= -1.0;
  }
  Vector var = sv.head(r).array().square() / static_cast<double>(x.rows());
  return PcaSupervector(m, std::move(comps), std::move(var));
}

}  // namespace fvc
