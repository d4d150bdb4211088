// fvc/src/base/binary-io.cc

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

#include "fvc/base/binary-io.h"

#include <bit>
#include <fstream>

#include "fvc/base/error.h"

namespace fvc {

namespace {

template <typename T>
void PutLe(std::ostream& os, T v) {
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i)
    buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

}  // namespace

void BinaryWriter::Bytes(const unsigned char* p, std::size_t n) {
  os_.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void BinaryWriter::Header(std::string_view magic, uint32_t version) {
  os_.write(magic.data(), static_cast<std::streamsize>(magic.size()));
  U32(version);
}

void BinaryWriter::U8(uint8_t v) { Bytes(&v, 1); }
void BinaryWriter::U32(uint32_t v) { PutLe(os_, v); }
void BinaryWriter::U64(uint64_t v) { PutLe(os_, v); }
void BinaryWriter::F32(float v) { U32(std::bit_cast<uint32_t>(v)); }
void BinaryWriter::F64(double v) { U64(std::bit_cast<uint64_t>(v)); }

void BinaryWriter::Str(std::string_view s) {
  U32(static_cast<uint32_t>(s.size()));
  os_.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void BinaryWriter::F64s(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) F64(v[i]);
}

void BinaryWriter::F64s(const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) F64(m(r, c));
}

void BinaryReader::Bytes(unsigned char* p, std::size_t n) {
  is_.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(is_.gcount()) != n)
    throw FormatError(source_ + ": unexpected end of file");
}

uint32_t BinaryReader::Header(std::string_view magic, uint32_t max_version) {
  std::string got(magic.size(), '\0');
  Bytes(reinterpret_cast<unsigned char*>(got.data()), got.size());
  if (got != magic)
    throw FormatError(source_ + ": bad magic, expected " + std::string(magic));
  uint32_t version = U32();
  if (version == 0 || version > max_version)
    throw FormatError(source_ + ": unsupported version " +
                      std::to_string(version));
  return version;
}

uint8_t BinaryReader::U8() {
  unsigned char b;
  Bytes(&b, 1);
  return b;
}

uint32_t BinaryReader::U32() {
  unsigned char b[4];
  Bytes(b, 4);
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

uint64_t BinaryReader::U64() {
  unsigned char b[8];
  Bytes(b, 8);
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

float BinaryReader::F32() { return std::bit_cast<float>(U32()); }
double BinaryReader::F64() { return std::bit_cast<double>(U64()); }

std::string BinaryReader::Str() {
  uint32_t n = U32();
  if (n > (1u << 24)) throw FormatError(source_ + ": implausible string length");
  std::string s(n, '\0');
  Bytes(reinterpret_cast<unsigned char*>(s.data()), n);
  return s;
}

Vector BinaryReader::F64Vector(Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = F64();
  return v;
}

Matrix BinaryReader::F64Matrix(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = F64();
  return m;
}

void BinaryReader::ExpectEnd() {
  if (is_.peek() != std::char_traits<char>::eof())
    throw FormatError(source_ + ": trailing bytes after payload");
}

std::filesystem::path SidecarPath(const std::filesystem::path& artifact) {
  std::filesystem::path p = artifact;
  p += ".hdr";
  return p;
}

void WriteSidecar(const std::filesystem::path& artifact, const Sidecar& fields) {
  std::ofstream os(SidecarPath(artifact), std::ios::binary);
  if (!os) throw Error("cannot write " + SidecarPath(artifact).string());
  for (const auto& [key, value] : fields) os << key << ": " << value << '\n';
}

Sidecar ReadSidecar(const std::filesystem::path& artifact) {
  Sidecar out;
  std::ifstream is(SidecarPath(artifact));
  if (!is) return out;
  std::string line;
  while (std::getline(is, line)) {
    auto pos = line.find(": ");
    if (pos == std::string::npos) continue;
    out[line.substr(0, pos)] = line.substr(pos + 2);
  }
  return out;
}

}  // namespace fvc
