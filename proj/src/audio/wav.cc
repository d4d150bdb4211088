// fvc/src/audio/wav.cc

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

#include "fvc/audio/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>

#include "fvc/base/binary-io.h"

namespace fvc {

namespace {

uint32_t Le32(const unsigned char* p) {
  return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 |
         uint32_t(p[3]) << 24;
}

uint16_t Le16(const unsigned char* p) { return uint16_t(p[0] | p[1] << 8); }

struct FmtChunk {
  uint16_t format_tag = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits = 0;
};

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatExtensible = 0xFFFE;

FmtChunk ParseFmt(const unsigned char* p, uint32_t size, const std::string& id) {
  if (size < 16) throw TruncatedFileError(id + ": fmt chunk too short");
  FmtChunk fmt;
  fmt.format_tag = Le16(p);
  fmt.channels = Le16(p + 2);
  fmt.sample_rate = Le32(p + 4);
  fmt.bits = Le16(p + 14);
  if (fmt.format_tag == kFormatExtensible) {
    if (size < 40) throw TruncatedFileError(id + ": extensible fmt too short");
    // The first two bytes of the SubFormat GUID carry the format code.
    fmt.format_tag = Le16(p + 24);
  }
  return fmt;
}

}  // namespace

AudioBuffer ReadWav(std::istream& is, const std::string& source_id) {
  std::vector<unsigned char> data((std::istreambuf_iterator<char>(is)),
                                  std::istreambuf_iterator<char>());
  const std::string& id = source_id;
  if (data.size() < 12) throw TruncatedFileError(id + ": shorter than RIFF header");
  if (std::string(data.begin(), data.begin() + 4) != "RIFF" ||
      std::string(data.begin() + 8, data.begin() + 12) != "WAVE")
    throw UnsupportedEncodingError(id + ": not a RIFF/WAVE file");

  std::optional<FmtChunk> fmt;
  const unsigned char* pcm = nullptr;
  std::size_t pcm_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= data.size()) {
    const std::string tag(data.begin() + pos, data.begin() + pos + 4);
    const uint32_t size = Le32(&data[pos + 4]);
    const std::size_t body = pos + 8;
    if (tag == "fmt ") {
      if (body + size > data.size())
        throw TruncatedFileError(id + ": fmt chunk runs past end of file");
      fmt = ParseFmt(&data[body], size, id);
    } else if (tag == "data") {
      if (body + size > data.size())
        throw TruncatedFileError(id + ": data chunk runs past end of file");
      pcm = &data[body];
      pcm_size = size;
      break;
    }
    pos = body + size + (size & 1u);
  }
  if (!fmt) throw TruncatedFileError(id + ": missing fmt chunk");
  if (!pcm) throw TruncatedFileError(id + ": missing data chunk");
  if (fmt->format_tag != kFormatPcm)
    throw UnsupportedEncodingError(id + ": format tag " +
                                   std::to_string(fmt->format_tag) +
                                   " is not linear PCM");
  if (fmt->bits != 8 && fmt->bits != 16 && fmt->bits != 24)
    throw UnsupportedEncodingError(id + ": " + std::to_string(fmt->bits) +
                                   "-bit PCM not supported");
  if (fmt->channels != 1)
    throw MultiChannelError(id + ": " + std::to_string(fmt->channels) +
                            " channels; only mono is accepted");
  if (fmt->sample_rate < kMinSampleRate)
    throw UnsupportedSampleRateError(id + ": sample rate " +
                                     std::to_string(fmt->sample_rate) +
                                     " Hz is below 8000 Hz");

  const std::size_t width = fmt->bits / 8;
  if (pcm_size % width != 0)
    throw TruncatedFileError(id + ": data chunk ends mid-sample");
  const std::size_t n = pcm_size / width;
  if (n == 0) throw TruncatedFileError(id + ": no samples");

  AudioBuffer out;
  out.sample_rate = static_cast<int>(fmt->sample_rate);
  out.source_id = source_id;
  out.samples.resize(n);
  const double scale = 1.0 / static_cast<double>(1u << (fmt->bits - 1));
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned char* s = pcm + i * width;
    int32_t v = 0;
    switch (width) {
      case 1:
        v = int32_t(s[0]) - 128;
        break;
      case 2:
        v = static_cast<int16_t>(Le16(s));
        break;
      case 3:
        v = int32_t(uint32_t(s[0]) << 8 | uint32_t(s[1]) << 16 |
                    uint32_t(s[2]) << 24) >> 8;
        break;
    }
    out.samples[i] = v * scale;
  }
  return out;
}

AudioBuffer ReadWav(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  return ReadWav(is, path.string());
}

void WriteWav16(const std::filesystem::path& path, const AudioBuffer& buffer) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  const uint32_t data_bytes = static_cast<uint32_t>(buffer.samples.size() * 2);
  BinaryWriter w(os);
  os.write("RIFF", 4);
  w.U32(36 + data_bytes);
  os.write("WAVEfmt ", 8);
  w.U32(16);
  os.put(1), os.put(0);  // PCM
  os.put(1), os.put(0);  // mono
  w.U32(static_cast<uint32_t>(buffer.sample_rate));
  w.U32(static_cast<uint32_t>(buffer.sample_rate) * 2);
  os.put(2), os.put(0);   // block align
  os.put(16), os.put(0);  // bits
  os.write("data", 4);
  w.U32(data_bytes);
  for (double x : buffer.samples) {
    const double c = std::clamp(x, -1.0, 1.0);
    const auto v = static_cast<int16_t>(
        std::clamp(std::lround(c * 32768.0), -32768L, 32767L));
    const auto u = static_cast<uint16_t>(v);
    os.put(static_cast<char>(u & 0xff));
    os.put(static_cast<char>(u >> 8));
  }
}

}  // namespace fvc
