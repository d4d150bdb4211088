// fvc/src/pipeline/pipeline.cc

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

#include "fvc/pipeline/pipeline.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>

#include <spdlog/spdlog.h>

#include "fvc/audio/energy-vad.h"
#include "fvc/audio/wav.h"
#include "fvc/base/hash.h"
#include "fvc/base/parallel.h"
#include "fvc/eval/tippett-svg.h"
#include "fvc/gmm/map-adapt.h"
#include "fvc/ivector/baum-welch.h"
#include "fvc/score/gmm-ubm-score.h"

namespace fvc {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kBackendMagic = "FVCB";
constexpr uint32_t kBackendVersion = 1;

std::string Fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool IsWav(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  return ext == ".wav";
}

fs::path FeaturePath(const PipelineContext& ctx, const std::string& id) {
  return ctx.out_dir / "features" / (id + ".fvcf");
}

Sidecar Provenance(const PipelineContext& ctx) {
  return {{"config_hash", ctx.config.Hash()},
          {"seed", std::to_string(ctx.config.seed)},
          {"path", std::string(ScoringPathName(ctx.config.path))}};
}

void CheckProvenance(const fs::path& artifact, const PipelineContext& ctx) {
  const Sidecar side = ReadSidecar(artifact);
  auto it = side.find("config_hash");
  if (it == side.end()) {
    spdlog::warn("{} has no config hash; cannot confirm it matches this config",
                 artifact.string());
  } else if (it->second != ctx.config.Hash()) {
    spdlog::warn("CONFIG MISMATCH: {} was produced with config {} but the current "
                 "config hashes to {}", artifact.string(), it->second, ctx.config.Hash());
  }
}

RowMatrix StackFrames(const std::vector<FeatureMatrix>& feats) {
  Eigen::Index rows = 0, dim = 0;
  for (const FeatureMatrix& f : feats) {
    if (dim == 0) dim = f.Dim();
    if (f.Dim() != dim) throw DimensionMismatch("recordings differ in feature dim");
    rows += f.NumFrames();
  }
  RowMatrix all(rows, dim);
  Eigen::Index at = 0;
  for (const FeatureMatrix& f : feats) {
    all.middleRows(at, f.NumFrames()) = f.vectors;
    at += f.NumFrames();
  }
  return all;
}

std::vector<FeatureMatrix> LoadAll(const std::vector<ManifestRow>& rows,
                                   const PipelineContext& ctx) {
  std::vector<FeatureMatrix> out(rows.size());
  ParallelFor(rows.size(), [&](std::size_t i) { out[i] = LoadFeatures(rows[i], ctx); });
  return out;
}

std::vector<ManifestRow> Unique(const std::vector<ManifestRow>& rows) {
  Manifest m{rows};
  return m.UniqueRecordings();
}

void WriteText(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error("cannot write " + p.string());
  os << text;
}

std::string ScoresCsv(const std::vector<Trial>& trials,
                      const std::vector<double>* log_lrs) {
  std::string s = "questioned_id,known_id,score,n_frames,label";
  s += log_lrs ? ",log_lr\n" : "\n";
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const Trial& t = trials[i];
    s += t.questioned_id + "," + t.known_id + "," + Fmt(t.score) + "," +
         std::to_string(t.num_frames) + "," + (t.same_speaker ? "same" : "diff");
    if (log_lrs) s += "," + Fmt((*log_lrs)[i]);
    s += "\n";
  }
  return s;
}

Embedding EmbedRecording(const Models& m, const FeatureMatrix& f, const std::string& id) {
  const BaumWelchStats stats = AccumulateBaumWelch(m.ubm, f.vectors, id);
  return m.cldf->Apply(m.whitening->Apply(ExtractIvector(*m.tv, stats)));
}

}  // namespace

FeatureMatrix ComputeFeatures(const fs::path& recording, const PipelineConfig& config) {
  FeatureMatrix raw;
  if (IsWav(recording)) {
    const AudioBuffer audio = ReadWav(recording);
    fs::path vad_file = recording;
    vad_file.replace_extension(".vad");
    const VadMask mask =
        fs::exists(vad_file)
            ? MaskFromSegments(ReadVadSegments(vad_file), audio.samples.size(),
                               audio.sample_rate, config.mfcc.framing)
            : EnergyVad(audio, config.mfcc.framing, config.vad_threshold_db);
    raw = ExtractFeatures(audio, mask, config.mfcc);
  } else {
    raw = ReadFeatures(recording);
    if (raw.stage == FeatureStage::kCompensated) return raw;
  }
  return Compensate(raw, config.compensation, config.warp);
}

FeatureMatrix LoadFeatures(const ManifestRow& row, const PipelineContext& ctx) {
  if (!ctx.out_dir.empty()) {
    const fs::path cached = FeaturePath(ctx, row.RecordingId());
    if (fs::exists(cached)) {
      const Sidecar side = ReadSidecar(cached);
      auto fh = side.find("feature_hash");
      auto src = side.find("source_sha256");
      if (fh != side.end() && fh->second == ctx.config.FeatureHash() &&
          src != side.end() && src->second == Sha256File(row.recording_path))
        return ReadFeatures(cached);
    }
  }
  return ComputeFeatures(row.recording_path, ctx.config);
}

ExtractReport CmdExtract(const Manifest& manifest, const PipelineContext& ctx) {
  if (ctx.out_dir.empty()) throw InvalidArgument("extract needs an output directory");
  fs::create_directories(ctx.out_dir / "features");
  const std::vector<ManifestRow> recs = manifest.UniqueRecordings();
  const std::string feature_hash = ctx.config.FeatureHash();

  struct Slot {
    bool skipped = false;
    std::string error;
    std::string source_hash;
    int64_t frames = 0, dims = 0;
  };
  std::vector<Slot> slots(recs.size());
  ParallelFor(recs.size(), [&](std::size_t i) {
    Slot& s = slots[i];
    const ManifestRow& r = recs[i];
    try {
      s.source_hash = Sha256File(r.recording_path);
      const fs::path out = FeaturePath(ctx, r.RecordingId());
      if (fs::exists(out)) {
        const Sidecar side = ReadSidecar(out);
        auto fh = side.find("feature_hash");
        auto src = side.find("source_sha256");
        if (fh != side.end() && fh->second == feature_hash && src != side.end() &&
            src->second == s.source_hash) {
          s.skipped = true;
          s.frames = std::stoll(side.at("frames"));
          s.dims = std::stoll(side.at("dims"));
          return;
        }
      }
      const FeatureMatrix f = ComputeFeatures(r.recording_path, ctx.config);
      Sidecar side = Provenance(ctx);
      side["feature_hash"] = feature_hash;
      side["source_sha256"] = s.source_hash;
      side["recording_id"] = r.RecordingId();
      side["compensation"] = std::string(CompensationName(ctx.config.compensation));
      WriteFeatures(out, f, side);
      s.frames = f.NumFrames();
      s.dims = f.Dim();
    } catch (const std::exception& e) {
      s.error = e.what();
    }
  });

  ExtractReport report;
  std::string index = "recording_id,feature_file,source_sha256,frames,dims\n";
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const Slot& s = slots[i];
    if (!s.error.empty()) {
      report.failures.push_back(recs[i].recording_path.string() + ": " + s.error);
      spdlog::error("extract failed for {}: {}", recs[i].recording_path.string(), s.error);
      continue;
    }
    (s.skipped ? report.skipped : report.written)++;
    index += recs[i].RecordingId() + "," + recs[i].RecordingId() + ".fvcf," +
             s.source_hash + "," + std::to_string(s.frames) + "," +
             std::to_string(s.dims) + "\n";
  }
  WriteText(ctx.out_dir / "features" / "index.csv", index);
  return report;
}

void CmdTrain(const Manifest& manifest, const PipelineContext& ctx) {
  const PipelineConfig& cfg = ctx.config;
  const std::vector<ManifestRow> ubm_rows = Unique(manifest.InSplit(Split::kUbm));
  if (ubm_rows.empty()) throw InvalidArgument("train: the manifest has no ubm split");
  fs::create_directories(ctx.models_dir);

  spdlog::info("training UBM on {} recordings, G = {}", ubm_rows.size(),
               cfg.ubm.num_components);
  const EmResult em = EmFit(StackFrames(LoadAll(ubm_rows, ctx)), cfg.ubm);
  if (!em.converged)
    spdlog::warn("UBM EM stopped after {} iterations without converging", em.iterations);
  Sidecar side = Provenance(ctx);
  side["em_iterations"] = std::to_string(em.iterations);
  WriteGmm(ctx.models_dir / "ubm.gmm", em.gmm, side);

  if (cfg.path == ScoringPath::kGmmUbm) {
    std::vector<ManifestRow> known;
    for (const ManifestRow& r : Unique(manifest.InSplit(Split::kCase)))
      if (r.condition == Condition::kKnownLike) known.push_back(r);
    if (known.empty()) return;
    fs::create_directories(ctx.models_dir / "speakers");
    const std::vector<FeatureMatrix> feats = LoadAll(known, ctx);
    for (std::size_t i = 0; i < known.size(); ++i) {
      Sidecar s = Provenance(ctx);
      s["recording_id"] = known[i].RecordingId();
      s["speaker_id"] = known[i].speaker_id;
      s["relevance_factor"] = Fmt(cfg.relevance_factor);
      WriteGmm(ctx.models_dir / "speakers" / (known[i].RecordingId() + ".gmm"),
               MapAdaptMeans(em.gmm, feats[i].vectors, cfg.relevance_factor), s);
    }
    return;
  }

  const std::vector<ManifestRow> pop = Unique(manifest.InSplit(Split::kPopulation));
  if (pop.empty()) throw InvalidArgument("train: the manifest has no population split");
  const std::vector<FeatureMatrix> feats = LoadAll(pop, ctx);
  std::vector<BaumWelchStats> stats(pop.size());
  ParallelFor(pop.size(), [&](std::size_t i) {
    stats[i] = AccumulateBaumWelch(em.gmm, feats[i].vectors, pop[i].RecordingId());
  });
  spdlog::info("training T matrix: {} recordings, R = {}", pop.size(),
               cfg.ivector.ivector_dim);
  const TMatrixTraining tt = TrainTMatrix(stats, em.gmm, cfg.ivector);
  WriteTvModel(ctx.models_dir / "tv.fvct", tt.model, Provenance(ctx));

  std::vector<Embedding> raw(pop.size());
  ParallelFor(pop.size(), [&](std::size_t i) { raw[i] = ExtractIvector(tt.model, stats[i]); });
  const WhiteningTransform white = FitWhitening(raw);
  std::vector<Embedding> whitened;
  std::vector<std::string> speakers;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    whitened.push_back(white.Apply(raw[i]));
    speakers.push_back(pop[i].speaker_id);
  }
  const CldfTransform cldf = FitCldf(whitened, speakers, cfg.cldf_dim);
  std::vector<Embedding> projected;
  for (const Embedding& e : whitened) projected.push_back(cldf.Apply(e));
  const PldaModel plda = FitPlda(projected, speakers);

  const fs::path backend = ctx.models_dir / "backend.fvcb";
  {
    std::ofstream os(backend, std::ios::binary);
    if (!os) throw Error("cannot write " + backend.string());
    BinaryWriter w(os);
    w.Header(kBackendMagic, kBackendVersion);
    WriteWhitening(w, white);
    WriteCldf(w, cldf);
    WritePlda(w, plda);
  }
  Sidecar bs = Provenance(ctx);
  bs["whitening_condition_number"] = Fmt(white.condition_number());
  bs["cldf_dim"] = std::to_string(cldf.OutputDim());
  bs["population_recordings"] = std::to_string(pop.size());
  WriteSidecar(backend, bs);
}

Models LoadModels(const PipelineContext& ctx) {
  const fs::path ubm = ctx.models_dir / "ubm.gmm";
  if (!fs::exists(ubm)) throw InvalidArgument("no UBM in " + ctx.models_dir.string() +
                                              "; run train first");
  CheckProvenance(ubm, ctx);
  Models m{ReadGmm(ubm), {}, {}, {}, {}};
  if (ctx.config.path == ScoringPath::kIvectorPlda) {
    const fs::path tv = ctx.models_dir / "tv.fvct";
    const fs::path backend = ctx.models_dir / "backend.fvcb";
    if (!fs::exists(tv) || !fs::exists(backend))
      throw InvalidArgument("i-vector models missing in " + ctx.models_dir.string() +
                            "; run train with --path ivector-plda");
    CheckProvenance(tv, ctx);
    CheckProvenance(backend, ctx);
    m.tv = ReadTvModel(tv);
    std::ifstream is(backend, std::ios::binary);
    BinaryReader r(is, backend.string());
    r.Header(kBackendMagic, kBackendVersion);
    m.whitening = ReadWhitening(r);
    m.cldf = ReadCldf(r);
    m.plda = ReadPlda(r);
    r.ExpectEnd();
  }
  return m;
}

std::vector<Trial> ScoreCrossConditionPairs(const std::vector<ManifestRow>& rows,
                                            const Models& models,
                                            const PipelineContext& ctx) {
  std::vector<ManifestRow> q, k;
  for (const ManifestRow& r : Unique(rows)) {
    if (r.condition == Condition::kQuestionedLike) q.push_back(r);
    if (r.condition == Condition::kKnownLike) k.push_back(r);
  }
  if (q.empty() || k.empty())
    throw InvalidArgument("need both questioned-like and known-like recordings to form pairs");
  const std::vector<FeatureMatrix> qf = LoadAll(q, ctx), kf = LoadAll(k, ctx);

  std::vector<Trial> trials;
  for (const ManifestRow& a : q)
    for (const ManifestRow& b : k)
      trials.push_back({a.RecordingId(), b.RecordingId(), a.speaker_id == b.speaker_id, 0.0,
                        0});
  for (std::size_t t = 0; t < trials.size(); ++t)
    trials[t].num_frames = qf[t / k.size()].NumFrames();
  const std::size_t nk = k.size();

  if (ctx.config.path == ScoringPath::kGmmUbm) {
    std::vector<DiagGmm> adapted(nk);
    ParallelFor(nk, [&](std::size_t j) {
      adapted[j] = MapAdaptMeans(models.ubm, kf[j].vectors, ctx.config.relevance_factor);
    });
    ParallelFor(trials.size(), [&](std::size_t t) {
      trials[t].score = ScoreRecording(adapted[t % nk], models.ubm, qf[t / nk]).value;
    });
  } else {
    std::vector<Embedding> qe(q.size()), ke(nk);
    ParallelFor(q.size(), [&](std::size_t i) { qe[i] = EmbedRecording(models, qf[i], q[i].RecordingId()); });
    ParallelFor(nk, [&](std::size_t j) { ke[j] = EmbedRecording(models, kf[j], k[j].RecordingId()); });
    ParallelFor(trials.size(), [&](std::size_t t) {
      trials[t].score = PldaScore(*models.plda, qe[t / nk], ke[t % nk]);
    });
  }
  return trials;
}

fs::path CalibrationPath(const PipelineContext& ctx) {
  return ctx.models_dir /
         ("calibration-" + std::string(ScoringPathName(ctx.config.path)) + ".txt");
}

CalibrationModel CmdCalibrate(const Manifest& manifest, const PipelineContext& ctx) {
  const std::vector<ManifestRow> rows = manifest.InSplit(Split::kCalibration);
  if (rows.empty()) throw InvalidArgument("calibrate: the manifest has no calibration split");
  const Models models = LoadModels(ctx);
  const std::vector<Trial> trials = ScoreCrossConditionPairs(rows, models, ctx);
  std::vector<double> same, diff;
  for (const Trial& t : trials) (t.same_speaker ? same : diff).push_back(t.score);
  if (same.empty())
    throw InvalidArgument("calibrate: no same-speaker pairs can be formed");
  CalibrationModel m = FitCalibration(ctx.config.calibration, same, diff);
  m.extra["path"] = std::string(ScoringPathName(ctx.config.path));
  m.extra["config_hash"] = ctx.config.Hash();
  m.extra["seed"] = std::to_string(ctx.config.seed);
  fs::create_directories(ctx.models_dir);
  WriteCalibration(CalibrationPath(ctx), m);
  if (!ctx.out_dir.empty())
    WriteText(ctx.out_dir / "calibration" / std::string(ScoringPathName(ctx.config.path)) /
                  "scores.csv",
              ScoresCsv(trials, nullptr));
  spdlog::info("calibration ({}): a = {:.6g}, b = {:.6g} from {} same / {} different pairs",
               CalibrationMethodName(m.method), m.a, m.b, m.num_same, m.num_diff);
  return m;
}

namespace {
CalibrationModel RequireCalibration(const PipelineContext& ctx) {
  const fs::path p = CalibrationPath(ctx);
  if (!fs::exists(p))
    throw MissingCalibrationError(
        "no calibration model for path " + std::string(ScoringPathName(ctx.config.path)) +
        " (" + p.string() + "); run calibrate first. Uncalibrated scores are not "
        "likelihood ratios and are not reported as such");
  CalibrationModel m = ReadCalibration(p);
  auto it = m.extra.find("config_hash");
  if (it != m.extra.end() && it->second != ctx.config.Hash())
    spdlog::warn("CONFIG MISMATCH: {} was fitted under config {}", p.string(), it->second);
  return m;
}
}  // namespace

std::string CompareResult::Format() const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "score: %.6f\nlog_lr (natural): %.6f\nlog10_lr: %.6f\nlr: %.6g\n", score,
                log_lr, log10_lr, lr);
  std::string s = buf;
  s += "provenance:\n";
  for (const auto& [k, v] : provenance) s += "  " + k + ": " + v + "\n";
  return s;
}

CompareResult CmdCompare(const fs::path& questioned, const fs::path& known,
                         const PipelineContext& ctx) {
  const CalibrationModel calib = RequireCalibration(ctx);
  const Models models = LoadModels(ctx);
  const FeatureMatrix qf = ComputeFeatures(questioned, ctx.config);
  const FeatureMatrix kf = ComputeFeatures(known, ctx.config);
  CompareResult r;
  if (ctx.config.path == ScoringPath::kGmmUbm) {
    const fs::path cached = ctx.models_dir / "speakers" / (known.stem().string() + ".gmm");
    const DiagGmm model = fs::exists(cached)
                              ? ReadGmm(cached)
                              : MapAdaptMeans(models.ubm, kf.vectors,
                                              ctx.config.relevance_factor);
    r.score = ScoreRecording(model, models.ubm, qf).value;
  } else {
    r.score = PldaScore(*models.plda, EmbedRecording(models, qf, questioned.stem().string()),
                        EmbedRecording(models, kf, known.stem().string()));
  }
  r.log_lr = calib.Apply(r.score);
  r.log10_lr = r.log_lr / std::numbers::ln10;
  r.lr = std::exp(r.log_lr);
  r.provenance = {
      {"path", std::string(ScoringPathName(ctx.config.path))},
      {"questioned", questioned.string()},
      {"known", known.string()},
      {"ubm_sha256", Sha256File(ctx.models_dir / "ubm.gmm")},
      {"calibration_method", std::string(CalibrationMethodName(calib.method))},
      {"calibration_a", Fmt(calib.a)},
      {"calibration_b", Fmt(calib.b)},
      {"calibration_scores_sha256", calib.fingerprint},
      {"config_hash", ctx.config.Hash()},
      {"seed", std::to_string(ctx.config.seed)}};
  if (ctx.config.path == ScoringPath::kIvectorPlda) {
    r.provenance.push_back({"tv_sha256", Sha256File(ctx.models_dir / "tv.fvct")});
    r.provenance.push_back({"backend_sha256", Sha256File(ctx.models_dir / "backend.fvcb")});
  }
  return r;
}

ValidationReport CmdValidate(const Manifest& manifest, const PipelineContext& ctx,
                             bool uncalibrated) {
  const std::vector<ManifestRow> rows = manifest.InSplit(Split::kTest);
  if (rows.empty()) throw InvalidArgument("validate: the test split is empty");
  CheckSplitHygiene(manifest);
  std::optional<CalibrationModel> calib;
  if (!uncalibrated) calib = RequireCalibration(ctx);
  const Models models = LoadModels(ctx);
  const std::vector<Trial> trials = ScoreCrossConditionPairs(rows, models, ctx);
  TrialSet set;
  std::vector<double> log_lrs;
  for (const Trial& t : trials) {
    const double l = calib ? calib->Apply(t.score) : t.score;
    log_lrs.push_back(l);
    (t.same_speaker ? set.same : set.diff).push_back(l);
  }
  const std::string name = std::string(ScoringPathName(ctx.config.path)) +
                           (uncalibrated ? "-uncalibrated" : "");
  ValidationReport report = Validate(set, name);
  if (!ctx.out_dir.empty()) {
    const fs::path dir = ctx.out_dir / "validation" / name;
    WriteText(dir / "scores.csv", ScoresCsv(trials, &log_lrs));
    WriteValidationReport(dir, set, report);
  }
  spdlog::info("validation {}: {}", name, report.Summary());
  return report;
}

Manifest CmdGenCorpus(const GenCorpusOptions& options, const fs::path& out_dir) {
  if (options.population_speakers < 1 || options.calibration_speakers < 1 ||
      options.test_speakers < 1)
    throw InvalidArgument("gen-corpus needs at least one speaker in every split");
  FeatureCorpusSpec spec = options.spec;
  spec.num_speakers =
      options.population_speakers + options.calibration_speakers + options.test_speakers;
  const FeatureCorpus corpus = GenFeatureCorpus(spec);
  fs::create_directories(out_dir / "corpus");
  Manifest m;
  std::map<std::string, Split> split_of;
  for (int s = 0; s < spec.num_speakers; ++s)
    split_of[corpus.speaker_ids[static_cast<std::size_t>(s)]] =
        s < options.population_speakers ? Split::kPopulation
        : s < options.population_speakers + options.calibration_speakers ? Split::kCalibration
                                                                         : Split::kTest;
  std::vector<ManifestRow> ubm_rows;
  for (const FeatureRecording& rec : corpus.recordings) {
    FeatureMatrix f;
    f.vectors = rec.frames;
    f.stage = FeatureStage::kRaw;
    const fs::path p = out_dir / "corpus" / (rec.recording_id + ".fvcf");
    WriteFeatures(p, f, {{"speaker_id", rec.speaker_id},
                         {"condition", rec.condition},
                         {"seed", std::to_string(spec.seed)},
                         {"generator", "synthetic-feature-corpus"}});
    ManifestRow row{fs::absolute(p), rec.speaker_id, ParseCondition(rec.condition),
                    split_of.at(rec.speaker_id)};
    if (row.split == Split::kPopulation && options.population_as_ubm) {
      ManifestRow u = row;
      u.split = Split::kUbm;
      ubm_rows.push_back(u);
    }
    m.rows.push_back(std::move(row));
  }
  m.rows.insert(m.rows.begin(), ubm_rows.begin(), ubm_rows.end());
  WriteManifest(out_dir / "manifest.csv", m);
  return m;
}

}  // namespace fvc
