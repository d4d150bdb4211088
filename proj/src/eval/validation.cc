// fvc/src/eval/validation.cc

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

#include "fvc/eval/validation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "fvc/base/error.h"
#include "fvc/eval/tippett-svg.h"

namespace fvc {

namespace {

// log2(1 + e^x) without overflow; exact (1) at x = 0.
double Log2OnePlusExp(double x) {
  if (x > 0.0) return x / std::numbers::ln2 + Log2OnePlusExp(-x);
  if (x > -1.0) return std::log2(1.0 + std::exp(x));
  return std::log1p(std::exp(x)) / std::numbers::ln2;
}

void CheckTrials(const TrialSet& t) {
  if (t.same.empty() || t.diff.empty())
    throw InvalidArgument("validation needs at least one trial of each class");
  for (double v : t.same)
    if (!std::isfinite(v)) throw InvalidArgument("non-finite same-speaker log LR");
  for (double v : t.diff)
    if (!std::isfinite(v)) throw InvalidArgument("non-finite different-speaker log LR");
}

std::vector<double> SortedLog10(const std::vector<double>& ln) {
  std::vector<double> v;
  v.reserve(ln.size());
  for (double x : ln) v.push_back(x / std::numbers::ln10);
  std::sort(v.begin(), v.end());
  return v;
}

void WriteText(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error("cannot write " + p.string());
  os << text;
}

std::string Fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

double ComputeCllr(const TrialSet& trials) {
  CheckTrials(trials);
  double s = 0.0, d = 0.0;
  for (double v : trials.same) s += Log2OnePlusExp(-v);
  for (double v : trials.diff) d += Log2OnePlusExp(v);
  s /= static_cast<double>(trials.same.size());
  d /= static_cast<double>(trials.diff.size());
  return 0.5 * (s + d);
}

TippettCurves ComputeTippett(const TrialSet& trials) {
  CheckTrials(trials);
  TippettCurves c;
  const std::vector<double> s = SortedLog10(trials.same);
  const double ns = static_cast<double>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i + 1 == s.size() || s[i + 1] != s[i])
      c.same.push_back({s[i], static_cast<double>(i + 1) / ns});
  const std::vector<double> d = SortedLog10(trials.diff);
  const double nd = static_cast<double>(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    if (i == 0 || d[i - 1] != d[i])
      c.diff.push_back({d[i], static_cast<double>(d.size() - i) / nd});
  return c;
}

double TippettCurves::SameAt(double x) const {
  double p = 0.0;
  for (const TippettPoint& pt : same) {
    if (pt.log10_lr > x) break;
    p = pt.proportion;
  }
  return p;
}

double TippettCurves::DiffAt(double x) const {
  for (const TippettPoint& pt : diff)
    if (pt.log10_lr >= x) return pt.proportion;
  return 0.0;
}

double TippettCurves::GapAtHalf() const {
  if (same.empty() || diff.empty()) throw InvalidArgument("empty Tippett curve");
  double xs = same.back().log10_lr;
  for (const TippettPoint& pt : same)
    if (pt.proportion >= 0.5) {
      xs = pt.log10_lr;
      break;
    }
  double xd = diff.front().log10_lr;
  for (const TippettPoint& pt : diff)
    if (pt.proportion >= 0.5) xd = pt.log10_lr;
  return xs - xd;
}

std::string ValidationReport::Summary() const {
  return "Cllr=" + Fmt("%.6f", cllr) + " Ns=" + std::to_string(num_same) +
         " Nd=" + std::to_string(num_diff);
}

ValidationReport Validate(const TrialSet& trials, std::string system_id) {
  ValidationReport r;
  r.system_id = std::move(system_id);
  r.cllr = ComputeCllr(trials);
  r.num_same = static_cast<int64_t>(trials.same.size());
  r.num_diff = static_cast<int64_t>(trials.diff.size());
  r.tippett = ComputeTippett(trials);
  return r;
}

void WriteValidationReport(const std::filesystem::path& dir, const TrialSet& trials,
                           const ValidationReport& report) {
  std::filesystem::create_directories(dir);
  std::string t = "label,log_lr,log10_lr\n";
  for (double v : trials.same)
    t += "same," + Fmt("%.17g", v) + "," + Fmt("%.17g", v / std::numbers::ln10) + "\n";
  for (double v : trials.diff)
    t += "diff," + Fmt("%.17g", v) + "," + Fmt("%.17g", v / std::numbers::ln10) + "\n";
  WriteText(dir / "trials.csv", t);
  std::string p = "curve,log10_lr,proportion\n";
  for (const TippettPoint& pt : report.tippett.same)
    p += "same," + Fmt("%.17g", pt.log10_lr) + "," + Fmt("%.17g", pt.proportion) + "\n";
  for (const TippettPoint& pt : report.tippett.diff)
    p += "diff," + Fmt("%.17g", pt.log10_lr) + "," + Fmt("%.17g", pt.proportion) + "\n";
  WriteText(dir / "tippett.csv", p);
  WriteText(dir / "tippett.svg", RenderTippettSvg(report));
  WriteText(dir / "summary.txt", report.Summary() + "\n");
}

}  // namespace fvc
