// fvc/include/fvc/base/binary-io.h

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

#ifndef FVC_BASE_BINARY_IO_H_
#define FVC_BASE_BINARY_IO_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include "fvc/base/types.h"

namespace fvc {

/// Little-endian writer for the versioned model/feature files. Every file
/// starts with a 4-byte magic and a uint32 version.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& os) : os_(os) {}

  void Header(std::string_view magic, uint32_t version);
  void U8(uint8_t v);
  void U32(uint32_t v);
  void U64(uint64_t v);
  void F32(float v);
  void F64(double v);
  void Str(std::string_view s);  // u32 length + bytes
  // Dimensions are not written; callers write them explicitly.
  void F64s(const Vector& v);
  void F64s(const Matrix& m);  // row-major order

 private:
  void Bytes(const unsigned char* p, std::size_t n);
  std::ostream& os_;
};

class BinaryReader {
 public:
  BinaryReader(std::istream& is, std::string source)
      : is_(is), source_(std::move(source)) {}

  /// Checks magic and returns the version; throws FormatError on mismatch.
  uint32_t Header(std::string_view magic, uint32_t max_version);
  uint8_t U8();
  uint32_t U32();
  uint64_t U64();
  float F32();
  double F64();
  std::string Str();
  Vector F64Vector(Eigen::Index n);
  Matrix F64Matrix(Eigen::Index rows, Eigen::Index cols);
  /// Throws unless the stream is exhausted.
  void ExpectEnd();

 private:
  void Bytes(unsigned char* p, std::size_t n);
  std::istream& is_;
  std::string source_;
};

/// Human-readable "key: value" sidecar written next to each binary artifact.
using Sidecar = std::map<std::string, std::string>;

std::filesystem::path SidecarPath(const std::filesystem::path& artifact);
void WriteSidecar(const std::filesystem::path& artifact, const Sidecar& fields);
/// Returns an empty map when no sidecar exists.
Sidecar ReadSidecar(const std::filesystem::path& artifact);

}  // namespace fvc

#endif  // FVC_BASE_BINARY_IO_H_
