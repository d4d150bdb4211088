// fvc/tools/fvc.cc

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

// Command-line front end: extract, train, calibrate, compare, validate and
// gen-corpus over a dataset manifest.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "fvc/base/error.h"
#include "fvc/base/parallel.h"
#include "fvc/pipeline/pipeline.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitInvalid = 2;

struct Common {
  std::string manifest;
  std::string config;
  std::string models_dir = "models";
  std::string out_dir = "out";
  std::optional<uint64_t> seed;
  bool single_thread = false;
  std::string path;
  bool verbose = false;
};

void AddCommon(CLI::App* cmd, Common& c, bool needs_manifest) {
  auto* m = cmd->add_option("--manifest", c.manifest, "dataset manifest (CSV)");
  if (needs_manifest) m->required()->check(CLI::ExistingFile);
  cmd->add_option("--config", c.config, "pipeline config (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--models-dir", c.models_dir, "model directory")->capture_default_str();
  cmd->add_option("--out-dir", c.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--seed", c.seed, "override the config seed");
  cmd->add_flag("--single-thread", c.single_thread,
                "run single-threaded (bit-reproducible outputs)");
  cmd->add_option("--path", c.path, "scoring path")
      ->check(CLI::IsMember({"gmm-ubm", "ivector-plda"}));
  cmd->add_flag("-v,--verbose", c.verbose, "debug logging");
}

fvc::PipelineContext MakeContext(const Common& c) {
  fvc::PipelineContext ctx;
  if (!c.config.empty()) ctx.config = fvc::LoadConfig(c.config);
  if (c.seed) ctx.config.seed = *c.seed;
  if (!c.path.empty()) ctx.config.path = fvc::ParseScoringPath(c.path);
  ctx.config.DeriveSeeds();
  ctx.models_dir = c.models_dir;
  ctx.out_dir = c.out_dir;
  if (c.single_thread) fvc::SetNumThreads(1);
  spdlog::set_level(c.verbose ? spdlog::level::debug : spdlog::level::info);
  return ctx;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fvc: forensic voice comparison with calibrated likelihood ratios"};
  app.require_subcommand(1);
  Common c;

  auto* extract = app.add_subcommand("extract", "extract compensated features");
  AddCommon(extract, c, true);
  auto* train = app.add_subcommand("train", "train the UBM and the selected path");
  AddCommon(train, c, true);
  auto* calibrate = app.add_subcommand("calibrate", "fit score-to-LR calibration");
  AddCommon(calibrate, c, true);
  auto* compare = app.add_subcommand("compare", "calibrated LR for one pair");
  AddCommon(compare, c, false);
  std::string questioned, known;
  compare->add_option("--questioned", questioned, "questioned recording")
      ->required()->check(CLI::ExistingFile);
  compare->add_option("--known", known, "known-speaker recording")
      ->required()->check(CLI::ExistingFile);
  auto* validate = app.add_subcommand("validate", "Cllr and Tippett report on the test split");
  AddCommon(validate, c, true);
  bool uncalibrated = false;
  validate->add_flag("--uncalibrated", uncalibrated,
                     "treat raw scores as natural-log LRs (diagnostic only)");
  auto* gen = app.add_subcommand("gen-corpus", "write a seeded synthetic feature corpus");
  AddCommon(gen, c, false);
  fvc::GenCorpusOptions g;
  gen->add_option("--population-speakers", g.population_speakers)->capture_default_str();
  gen->add_option("--calibration-speakers", g.calibration_speakers)->capture_default_str();
  gen->add_option("--test-speakers", g.test_speakers)->capture_default_str();
  gen->add_option("--frames", g.spec.frames_per_recording)->capture_default_str();
  gen->add_option("--dim", g.spec.dim)->capture_default_str();
  gen->add_option("--components", g.spec.components)->capture_default_str();
  gen->add_option("--speaker-spread", g.spec.speaker_spread)->capture_default_str();
  gen->add_option("--session-spread", g.spec.session_spread)->capture_default_str();
  gen->add_option("--channel-spread", g.spec.channel_spread)->capture_default_str();
  int questioned_per_speaker = 2, known_per_speaker = 2;
  gen->add_option("--questioned-per-speaker", questioned_per_speaker)->capture_default_str();
  gen->add_option("--known-per-speaker", known_per_speaker)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    const fvc::PipelineContext ctx = MakeContext(c);
    if (*extract) {
      const fvc::ExtractReport r = fvc::CmdExtract(fvc::LoadManifest(c.manifest), ctx);
      std::printf("extracted %d, up to date %d, failed %zu\n", r.written, r.skipped,
                  r.failures.size());
      for (const std::string& f : r.failures) std::fprintf(stderr, "failed: %s\n", f.c_str());
      return r.failures.empty() ? kExitOk : kExitPartial;
    }
    if (*train) {
      fvc::CmdTrain(fvc::LoadManifest(c.manifest), ctx);
      std::printf("models written to %s\n", ctx.models_dir.string().c_str());
      return kExitOk;
    }
    if (*calibrate) {
      const fvc::CalibrationModel m = fvc::CmdCalibrate(fvc::LoadManifest(c.manifest), ctx);
      std::printf("calibration %s: a=%.6f b=%.6f same=%lld diff=%lld -> %s\n",
                  std::string(fvc::CalibrationMethodName(m.method)).c_str(), m.a, m.b,
                  static_cast<long long>(m.num_same), static_cast<long long>(m.num_diff),
                  fvc::CalibrationPath(ctx).string().c_str());
      return kExitOk;
    }
    if (*compare) {
      const fvc::CompareResult r = fvc::CmdCompare(questioned, known, ctx);
      std::fputs(r.Format().c_str(), stdout);
      return kExitOk;
    }
    if (*validate) {
      const fvc::ValidationReport r =
          fvc::CmdValidate(fvc::LoadManifest(c.manifest), ctx, uncalibrated);
      std::printf("%s\n", r.Summary().c_str());
      return kExitOk;
    }
    if (*gen) {
      g.spec.seed = ctx.config.seed;
      g.spec.recording_conditions.clear();
      for (int i = 0; i < questioned_per_speaker; ++i)
        g.spec.recording_conditions.push_back("questioned-like");
      for (int i = 0; i < known_per_speaker; ++i)
        g.spec.recording_conditions.push_back("known-like");
      const fvc::Manifest m = fvc::CmdGenCorpus(g, ctx.out_dir);
      std::printf("wrote %zu manifest rows to %s\n", m.rows.size(),
                  (ctx.out_dir / "manifest.csv").string().c_str());
      return kExitOk;
    }
  } catch (const fvc::InvalidArgument& e) {
    spdlog::error("{}", e.what());
    return kExitInvalid;
  } catch (const fvc::FormatError& e) {
    spdlog::error("{}", e.what());
    return kExitInvalid;
  } catch (const fvc::MissingCalibrationError& e) {
    spdlog::error("{}", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitPartial;
  }
  return kExitInvalid;
}
