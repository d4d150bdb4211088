// fvc/src/ivector/baum-welch.cc

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

#include "fvc/ivector/baum-welch.h"

#include <fstream>

#include "fvc/base/error.h"

namespace fvc {

namespace {
constexpr std::string_view kStatsMagic = "FVCS";
constexpr uint32_t kStatsVersion = 1;
}  // namespace

BaumWelchStats AccumulateBaumWelch(const DiagGmm& ubm, const RowMatrix& frames,
                                   std::string recording_id) {
  if (frames.rows() == 0)
    throw InvalidArgument("Baum-Welch statistics need at least one frame");
  if (frames.cols() != ubm.Dim())
    throw DimensionMismatch("feature dim differs from UBM dim");
  const Responsibilities r = ComputeResponsibilities(ubm, frames);
  BaumWelchStats s;
  s.recording_id = std::move(recording_id);
  s.num_frames = frames.rows();
  s.counts = r.gamma.colwise().sum().transpose();
  s.first = r.gamma.transpose() * frames;
  for (int g = 0; g < ubm.NumComponents(); ++g)
    s.first.row(g) -= s.counts[g] * ubm.means().row(g);
  return s;
}

void WriteBaumWelch(const std::filesystem::path& path, const BaumWelchStats& s,
                    const Sidecar& extra) {
  {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path.string());
    BinaryWriter w(os);
    w.Header(kStatsMagic, kStatsVersion);
    w.Str(s.recording_id);
    w.U32(static_cast<uint32_t>(s.NumComponents()));
    w.U32(static_cast<uint32_t>(s.Dim()));
    w.U64(static_cast<uint64_t>(s.num_frames));
    w.F64s(s.counts);
    w.F64s(s.first);
  }
  Sidecar side = extra;
  side["format"] = "fvc-baum-welch";
  side["recording_id"] = s.recording_id;
  WriteSidecar(path, side);
}

BaumWelchStats ReadBaumWelch(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  BinaryReader r(is, path.string());
  r.Header(kStatsMagic, kStatsVersion);
  BaumWelchStats s;
  s.recording_id = r.Str();
  const uint32_t g = r.U32(), m = r.U32();
  s.num_frames = static_cast<int64_t>(r.U64());
  s.counts = r.F64Vector(g);
  s.first = r.F64Matrix(g, m);
  r.ExpectEnd();
  return s;
}

}  // namespace fvc
