// fvc/tests/audio-test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fvc/audio/energy-vad.h"
#include "fvc/audio/wav.h"
#include "fvc/base/random.h"

namespace fs = std::filesystem;
using namespace fvc;

namespace {

void Put16(std::string* s, uint32_t v) {
  s->push_back(static_cast<char>(v & 0xff));
  s->push_back(static_cast<char>((v >> 8) & 0xff));
}

void Put32(std::string* s, uint32_t v) {
  Put16(s, v & 0xffff);
  Put16(s, v >> 16);
}

// Byte-level RIFF writer, independent of the library's own writer.
std::string MakeWav(const std::string& pcm, int bits, int channels, int rate,
                    int format_tag = 1, int32_t declared_data = -1) {
  std::string s = "RIFF";
  Put32(&s, static_cast<uint32_t>(36 + pcm.size()));
  s += "WAVEfmt ";
  Put32(&s, 16);
  Put16(&s, format_tag);
  Put16(&s, channels);
  Put32(&s, rate);
  Put32(&s, rate * channels * bits / 8);
  Put16(&s, channels * bits / 8);
  Put16(&s, bits);
  s += "data";
  Put32(&s, declared_data < 0 ? static_cast<uint32_t>(pcm.size())
                              : static_cast<uint32_t>(declared_data));
  return s + pcm;
}

std::string Pcm16(const std::vector<int16_t>& v) {
  std::string s;
  for (int16_t x : v) Put16(&s, static_cast<uint16_t>(x));
  return s;
}

AudioBuffer Parse(const std::string& bytes) {
  std::istringstream is(bytes);
  return ReadWav(is, "mem");
}

AudioBuffer Tone(double seconds, int rate, double amp, double hz = 440.0) {
  AudioBuffer b;
  b.sample_rate = rate;
  const auto n = static_cast<std::size_t>(seconds * rate);
  for (std::size_t i = 0; i < n; ++i)
    b.samples.push_back(amp * std::sin(2.0 * std::numbers::pi * hz * i / rate));
  return b;
}

}  // namespace

TEST_CASE("16-bit full scale and zero") {
  const AudioBuffer b = Parse(MakeWav(Pcm16({32767, 0, -32768}), 16, 1, 16000));
  REQUIRE(b.samples.size() == 3);
  CHECK(b.samples[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(b.samples[0] <= 1.0);
  CHECK(b.samples[1] == 0.0);
  CHECK(b.samples[2] == -1.0);
  CHECK(b.sample_rate == 16000);
}

TEST_CASE("one second of 8 kHz silence") {
  const AudioBuffer b = Parse(MakeWav(std::string(16000, '\0'), 16, 1, 8000));
  CHECK(b.samples.size() == 8000);
  for (double v : b.samples) CHECK(v == 0.0);
  CHECK(b.DurationSeconds() == 1.0);
}

TEST_CASE("8-bit and 24-bit scaling") {
  std::string u8{static_cast<char>(128), static_cast<char>(255), static_cast<char>(0)};
  const AudioBuffer b8 = Parse(MakeWav(u8, 8, 1, 8000));
  CHECK(b8.samples[0] == 0.0);
  CHECK(b8.samples[1] == 127.0 / 128.0);
  CHECK(b8.samples[2] == -1.0);

  std::string s24;
  for (uint32_t v : {0x7fffffu, 0x800000u, 0x000001u}) {
    s24.push_back(static_cast<char>(v & 0xff));
    s24.push_back(static_cast<char>((v >> 8) & 0xff));
    s24.push_back(static_cast<char>((v >> 16) & 0xff));
  }
  const AudioBuffer b24 = Parse(MakeWav(s24, 24, 1, 48000));
  CHECK(b24.samples[0] == 8388607.0 / 8388608.0);
  CHECK(b24.samples[1] == -1.0);
  CHECK(b24.samples[2] == 1.0 / 8388608.0);
}

TEST_CASE("named container errors") {
  const std::string pcm = Pcm16({1, 2, 3, 4});
  CHECK_THROWS_AS(Parse(MakeWav(pcm, 16, 1, 16000, 3)), UnsupportedEncodingError);
  CHECK_THROWS_AS(Parse(MakeWav(pcm, 32, 1, 16000)), UnsupportedEncodingError);
  CHECK_THROWS_AS(Parse(MakeWav(pcm, 16, 2, 16000)), MultiChannelError);
  CHECK_THROWS_AS(Parse(MakeWav(pcm, 16, 1, 4000)), UnsupportedSampleRateError);
  CHECK_THROWS_AS(Parse(MakeWav(pcm, 16, 1, 16000, 1, 100)), TruncatedFileError);
  CHECK_THROWS_AS(Parse(MakeWav(pcm, 16, 1, 16000).substr(0, 30)), TruncatedFileError);
  CHECK_THROWS_AS(Parse("RIFX0000WAVE"), UnsupportedEncodingError);
  // Every named error is a format error.
  CHECK_THROWS_AS(Parse(MakeWav(pcm, 16, 2, 16000)), FormatError);
}

TEST_CASE("16-bit write and read back") {
  const fs::path dir = fs::path(FVC_TEST_TMPDIR) / "audio";
  fs::create_directories(dir);
  AudioBuffer b = Tone(0.1, 16000, 0.5);
  WriteWav16(dir / "tone.wav", b);
  const AudioBuffer r = ReadWav(dir / "tone.wav");
  REQUIRE(r.samples.size() == b.samples.size());
  CHECK(r.sample_rate == 16000);
  for (std::size_t i = 0; i < b.samples.size(); ++i)
    CHECK(std::abs(r.samples[i] - b.samples[i]) <= 1.0 / 32768.0);
}

TEST_CASE("silence gives an all-false mask") {
  AudioBuffer b;
  b.sample_rate = 8000;
  b.samples.assign(8000, 0.0);
  const VadMask m = EnergyVad(b, Framing{});
  CHECK(m.NumFrames() == 99);
  CHECK(m.NumSpeechFrames() == 0);
}

TEST_CASE("steady sine is all speech") {
  const VadMask m = EnergyVad(Tone(1.0, 16000, 1.0), Framing{});
  CHECK(m.NumSpeechFrames() == m.NumFrames());
}

TEST_CASE("tone then silence against directly summed frame RMS") {
  AudioBuffer b = Tone(1.0, 16000, 0.8);
  b.samples.resize(32000, 0.0);
  const Framing fr;
  const VadMask m = EnergyVad(b, fr, 30.0);
  const std::size_t len = 320, shift = 160;
  REQUIRE(m.NumFrames() == (b.samples.size() - len) / shift + 1);
  double peak = 0.0;
  std::vector<double> rms(m.NumFrames());
  for (std::size_t f = 0; f < rms.size(); ++f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += b.samples[f * shift + i] * b.samples[f * shift + i];
    rms[f] = std::sqrt(acc / len);
    peak = std::max(peak, rms[f]);
  }
  for (std::size_t f = 0; f < rms.size(); ++f) {
    const bool expect = rms[f] > 0.0 && 20.0 * std::log10(rms[f] / peak) >= -30.0;
    CHECK(m.frame_flags[f] == expect);
  }
  // Frames fully inside the tone are speech, frames fully in the silence are not.
  CHECK(m.frame_flags[0]);
  CHECK(m.frame_flags[97]);
  CHECK_FALSE(m.frame_flags[100]);
  CHECK_FALSE(m.frame_flags.back());
}

TEST_CASE("mask length and gain invariance over random buffers") {
  Rng rng(21);
  for (int k = 0; k < 30; ++k) {
    AudioBuffer b;
    b.sample_rate = k % 2 ? 8000 : 16000;
    const std::size_t n = 400 + rng.Below(20000);
    for (std::size_t i = 0; i < n; ++i)
      b.samples.push_back((i / 800) % 3 == 0 ? 0.001 * rng.Normal() : 0.3 * rng.Normal());
    const Framing fr;
    const VadMask m = EnergyVad(b, fr);
    const std::size_t len = fr.LengthSamples(b.sample_rate), sh = fr.ShiftSamples(b.sample_rate);
    CHECK(m.NumFrames() == (n - len) / sh + 1);
    AudioBuffer g = b;
    for (double& v : g.samples) v *= 0.125;
    CHECK(EnergyVad(g, fr).frame_flags == m.frame_flags);
  }
}

TEST_CASE("buffer shorter than one frame") {
  AudioBuffer b;
  b.sample_rate = 16000;
  b.samples.assign(100, 0.1);
  CHECK_THROWS_AS(EnergyVad(b, Framing{}), InvalidArgument);
}

TEST_CASE("manual segments select frames by centre") {
  const fs::path dir = fs::path(FVC_TEST_TMPDIR) / "audio";
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "seg.vad");
    os << "# start end\n0.0 0.05\n\n0.5 1.0\n";
  }
  const VadSegments segs = ReadVadSegments(dir / "seg.vad");
  REQUIRE(segs.size() == 2);
  const VadMask m = MaskFromSegments(segs, 16000, 16000, Framing{});
  REQUIRE(m.NumFrames() == 99);
  // Frame f covers samples [160 f, 160 f + 320); its centre is in [start, end).
  for (std::size_t f = 0; f < m.NumFrames(); ++f) {
    const double c = (160.0 * f + 160.0) / 16000.0;
    CHECK(m.frame_flags[f] == ((c >= 0.0 && c < 0.05) || (c >= 0.5 && c < 1.0)));
  }
  CHECK(m.frame_flags[3]);
  CHECK_FALSE(m.frame_flags[4]);
  CHECK(m.frame_flags[49]);
  {
    std::ofstream os(dir / "bad.vad");
    os << "0.5 0.1\n";
  }
  CHECK_THROWS_AS(ReadVadSegments(dir / "bad.vad"), FormatError);
}
