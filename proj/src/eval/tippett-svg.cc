// fvc/src/eval/tippett-svg.cc

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

#include "fvc/eval/tippett-svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace fvc {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;

std::string F(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string Label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0f", v + 0.0);
  return std::string(buf) == "-0" ? "0" : buf;
}

struct Axes {
  double x0, x1;
  double X(double v) const { return kLeft + (v - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double Y(double p) const { return kHeight - kBottom - p * (kHeight - kTop - kBottom); }
};

std::string Polyline(const std::vector<std::pair<double, double>>& pts, const Axes& ax,
                     const char* colour, const char* dash) {
  std::string s = "<polyline fill=\"none\" stroke=\"";
  s += colour;
  s += "\" stroke-width=\"2\"";
  if (dash) s += std::string(" stroke-dasharray=\"") + dash + "\"";
  s += " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ' ';
    s += F(ax.X(pts[i].first)) + "," + F(ax.Y(pts[i].second));
  }
  return s + "\"/>\n";
}

}  // namespace

std::string RenderTippettSvg(const ValidationReport& report) {
  const TippettCurves& c = report.tippett;
  double lo = 0.0, hi = 0.0;
  for (const auto* curve : {&c.same, &c.diff})
    for (const TippettPoint& p : *curve) {
      lo = std::min(lo, p.log10_lr);
      hi = std::max(hi, p.log10_lr);
    }
  Axes ax{std::floor(lo) - 1.0, std::ceil(hi) + 1.0};
  const double span = ax.x1 - ax.x0;
  const double tick = span <= 12 ? 1.0 : span <= 24 ? 2.0 : std::ceil(span / 12.0);

  // Same-speaker CDF rises to the right; different-speaker survival rises
  // to the left.
  std::vector<std::pair<double, double>> same{{ax.x0, 0.0}};
  double prev = 0.0;
  for (const TippettPoint& p : c.same) {
    same.push_back({p.log10_lr, prev});
    same.push_back({p.log10_lr, p.proportion});
    prev = p.proportion;
  }
  same.push_back({ax.x1, prev});
  std::vector<std::pair<double, double>> diff{{ax.x0, c.diff.empty() ? 0.0 : 1.0}};
  for (std::size_t i = 0; i < c.diff.size(); ++i) {
    const double next = i + 1 < c.diff.size() ? c.diff[i + 1].proportion : 0.0;
    diff.push_back({c.diff[i].log10_lr, c.diff[i].proportion});
    diff.push_back({c.diff[i].log10_lr, next});
  }
  diff.push_back({ax.x1, 0.0});

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + F(kWidth) +
       "\" height=\"" + F(kHeight) + "\" viewBox=\"0 0 " + F(kWidth) + " " +
       F(kHeight) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + F(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"14\">" + report.system_id + "  " +
       report.Summary() + "</text>\n";
  // Frame, grid and ticks.
  s += "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (double x = std::ceil(ax.x0 / tick) * tick; x <= ax.x1 + 1e-9; x += tick)
    s += "<line x1=\"" + F(ax.X(x)) + "\" y1=\"" + F(ax.Y(0)) + "\" x2=\"" +
         F(ax.X(x)) + "\" y2=\"" + F(ax.Y(1)) + "\"/>\n";
  for (int k = 0; k <= 5; ++k)
    s += "<line x1=\"" + F(ax.X(ax.x0)) + "\" y1=\"" + F(ax.Y(k / 5.0)) + "\" x2=\"" +
         F(ax.X(ax.x1)) + "\" y2=\"" + F(ax.Y(k / 5.0)) + "\"/>\n";
  s += "</g>\n";
  s += "<rect x=\"" + F(kLeft) + "\" y=\"" + F(kTop) + "\" width=\"" +
       F(kWidth - kLeft - kRight) + "\" height=\"" + F(kHeight - kTop - kBottom) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<g font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">\n";
  for (double x = std::ceil(ax.x0 / tick) * tick; x <= ax.x1 + 1e-9; x += tick)
    s += "<text x=\"" + F(ax.X(x)) + "\" y=\"" + F(ax.Y(0) + 16) + "\">" +
         Label(x) + "</text>\n";
  for (int k = 0; k <= 5; ++k)
    s += "<text x=\"" + F(kLeft - 18) + "\" y=\"" + F(ax.Y(k / 5.0) + 4) + "\">" +
         F(k / 5.0).substr(0, 3) + "</text>\n";
  s += "</g>\n";
  s += "<text x=\"" + F(kLeft + (kWidth - kLeft - kRight) / 2) + "\" y=\"" +
       F(kHeight - 18) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"13\">log10 likelihood ratio</text>\n";
  s += "<text x=\"18\" y=\"" + F(kTop + (kHeight - kTop - kBottom) / 2) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
       "transform=\"rotate(-90 18 " + F(kTop + (kHeight - kTop - kBottom) / 2) +
       ")\">cumulative proportion</text>\n";
  s += Polyline(same, ax, "#1f4e9c", nullptr);
  s += Polyline(diff, ax, "#b22222", "6,3");
  // Legend.
  const double lx = kLeft + 12, ly = kTop + 14;
  s += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<line x1=\"" + F(lx) + "\" y1=\"" + F(ly) + "\" x2=\"" + F(lx + 24) +
       "\" y2=\"" + F(ly) + "\" stroke=\"#1f4e9c\" stroke-width=\"2\"/>\n";
  s += "<text x=\"" + F(lx + 30) + "\" y=\"" + F(ly + 4) + "\">same speaker (" +
       std::to_string(report.num_same) + ")</text>\n";
  s += "<line x1=\"" + F(lx) + "\" y1=\"" + F(ly + 18) + "\" x2=\"" + F(lx + 24) +
       "\" y2=\"" + F(ly + 18) + "\" stroke=\"#b22222\" stroke-width=\"2\" "
       "stroke-dasharray=\"6,3\"/>\n";
  s += "<text x=\"" + F(lx + 30) + "\" y=\"" + F(ly + 22) + "\">different speaker (" +
       std::to_string(report.num_diff) + ")</text>\n";
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace fvc
