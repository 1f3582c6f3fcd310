// Copyright 2026 The dramascope authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dramascope/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dramascope/csv.hpp"

namespace dramascope {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
                          "#bcbd22", "#7f7f7f"};
constexpr int kPaletteSize = 10;

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range padded(double lo, double hi) {
  if (lo > hi) return {0.0, 1.0};
  if (lo == hi) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    return {lo - pad, hi + pad};
  }
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

// Tick spacing snapped to 1/2/5 times a power of ten.
std::vector<double> ticks(const Range& r, int target = 6) {
  const double span = r.hi - r.lo;
  double step = std::pow(10.0, std::floor(std::log10(span / target)));
  const double err = span / (target * step);
  if (err >= 7.5) step *= 10.0;
  else if (err >= 3.5) step *= 5.0;
  else if (err >= 1.5) step *= 2.0;
  std::vector<double> out;
  double t = std::ceil(r.lo / step) * step;
  for (; t <= r.hi + step * 1e-9; t += step) out.push_back(t == 0.0 ? 0.0 : t);
  return out;
}

std::string tick_text(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e7) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  std::string s = format_fixed(v, 3);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

class Canvas {
 public:
  Canvas(int width, int height, const Range& xr, const Range& yr, int margin_left)
      : width_(width), height_(height), xr_(xr), yr_(yr),
        left_(margin_left), right_(width - 30), top_(50), bottom_(height - 55) {}

  double px(double x) const {
    return left_ + (x - xr_.lo) / (xr_.hi - xr_.lo) * (right_ - left_);
  }
  double py(double y) const {
    return bottom_ - (y - yr_.lo) / (yr_.hi - yr_.lo) * (bottom_ - top_);
  }

  void frame(std::ostringstream& s, const std::string& title,
             const std::string& x_label, const std::string& y_label) const {
    s << "<rect x=\"0\" y=\"0\" width=\"" << width_ << "\" height=\"" << height_
      << "\" fill=\"white\"/>\n";
    s << "<text x=\"" << width_ / 2 << "\" y=\"26\" text-anchor=\"middle\" "
         "font-size=\"17\" font-weight=\"bold\">" << xml_escape(title)
      << "</text>\n";
    for (const double t : ticks(xr_)) {
      const double x = px(t);
      s << "<line x1=\"" << num(x) << "\" y1=\"" << top_ << "\" x2=\"" << num(x)
        << "\" y2=\"" << bottom_ << "\" stroke=\"#dddddd\"/>\n";
      s << "<text x=\"" << num(x) << "\" y=\"" << bottom_ + 18
        << "\" text-anchor=\"middle\" font-size=\"12\">" << tick_text(t)
        << "</text>\n";
    }
    for (const double t : ticks(yr_)) {
      const double y = py(t);
      s << "<line x1=\"" << left_ << "\" y1=\"" << num(y) << "\" x2=\"" << right_
        << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
      s << "<text x=\"" << left_ - 6 << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-size=\"12\">" << tick_text(t)
        << "</text>\n";
    }
    s << "<rect x=\"" << left_ << "\" y=\"" << top_ << "\" width=\""
      << right_ - left_ << "\" height=\"" << bottom_ - top_
      << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    s << "<text x=\"" << (left_ + right_) / 2 << "\" y=\"" << height_ - 14
      << "\" text-anchor=\"middle\" font-size=\"13\">" << xml_escape(x_label)
      << "</text>\n";
    s << "<text x=\"18\" y=\"" << (top_ + bottom_) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << (top_ + bottom_) / 2 << ")\">" << xml_escape(y_label) << "</text>\n";
  }

  int left() const { return left_; }
  int right() const { return right_; }
  int top() const { return top_; }

 private:
  int width_, height_;
  Range xr_, yr_;
  int left_, right_, top_, bottom_;
};

std::string header(int width, int height) {
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
    << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
    << height << "\" font-family=\"Helvetica, Arial, sans-serif\">\n";
  return s.str();
}

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label,
                       const std::vector<Series>& series, int width,
                       int height) {
  double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        xlo = xhi = s.x[i];
        ylo = yhi = s.y[i];
        first = false;
      }
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  }
  const Canvas c(width, height, padded(xlo, xhi), padded(ylo, yhi), 70);

  std::ostringstream s;
  s << header(width, height);
  c.frame(s, title, x_label, y_label);
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& ser = series[si];
    const char* color = kPalette[si % kPaletteSize];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"";
    if (ser.dashed) s << " stroke-dasharray=\"6 4\"";
    s << " points=\"";
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      if (i) s << ' ';
      s << num(c.px(ser.x[i])) << ',' << num(c.py(ser.y[i]));
    }
    s << "\"/>\n";
    if (ser.x.size() <= 80) {
      for (std::size_t i = 0; i < ser.x.size(); ++i)
        s << "<circle cx=\"" << num(c.px(ser.x[i])) << "\" cy=\""
          << num(c.py(ser.y[i])) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
  }
  int ly = c.top() + 14;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % kPaletteSize];
    const int lx = c.right() - 170;
    s << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 22
      << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"";
    if (series[si].dashed) s << " stroke-dasharray=\"6 4\"";
    s << "/>\n";
    s << "<text x=\"" << lx + 28 << "\" y=\"" << ly
      << "\" font-size=\"12\">" << xml_escape(series[si].label) << "</text>\n";
    ly += 17;
  }
  s << "</svg>\n";
  return s.str();
}

std::string scatter_chart(const std::string& title, const std::string& x_label,
                          const std::string& y_label,
                          const std::vector<ScatterPoint>& points,
                          const std::vector<TextMark>& marks, int width,
                          int height) {
  double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  bool first = true;
  for (const auto& p : points) {
    if (first) {
      xlo = xhi = p.x;
      ylo = yhi = p.y;
      first = false;
    }
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
  const Canvas c(width, height, padded(xlo, xhi), padded(ylo, yhi), 70);

  std::ostringstream s;
  s << header(width, height);
  c.frame(s, title, x_label, y_label);
  for (const auto& p : points)
    s << "<circle cx=\"" << num(c.px(p.x)) << "\" cy=\"" << num(c.py(p.y))
      << "\" r=\"3.5\" fill=\"" << kPalette[p.group % kPaletteSize]
      << "\" fill-opacity=\"0.55\"/>\n";
  for (const auto& m : marks) {
    s << "<text x=\"" << num(c.px(m.x)) << "\" y=\"" << num(c.py(m.y))
      << "\" text-anchor=\"middle\" font-size=\"15\" font-weight=\"bold\" "
         "stroke=\"white\" stroke-width=\"4\" paint-order=\"stroke\">"
      << xml_escape(m.text) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string table_svg(const std::string& title,
                      const std::vector<std::string>& header_row,
                      const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths(header_row.size(), 0);
  for (std::size_t j = 0; j < header_row.size(); ++j)
    widths[j] = header_row[j].size();
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size() && j < widths.size(); ++j)
      widths[j] = std::max(widths[j], row[j].size());

  std::vector<int> x_off(header_row.size() + 1, 20);
  for (std::size_t j = 0; j < widths.size(); ++j)
    x_off[j + 1] = x_off[j] + static_cast<int>(widths[j]) * 8 + 24;
  const int width = x_off.back() + 20;
  const int row_h = 24;
  const int height = 70 + row_h * static_cast<int>(rows.size() + 1);

  std::ostringstream s;
  s << header(width, height);
  s << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
    << "\" fill=\"white\"/>\n";
  s << "<text x=\"20\" y=\"30\" font-size=\"17\" font-weight=\"bold\">"
    << xml_escape(title) << "</text>\n";
  int y = 66;
  for (std::size_t j = 0; j < header_row.size(); ++j)
    s << "<text x=\"" << x_off[j] << "\" y=\"" << y
      << "\" font-size=\"13\" font-weight=\"bold\">" << xml_escape(header_row[j])
      << "</text>\n";
  s << "<line x1=\"20\" y1=\"" << y + 7 << "\" x2=\"" << width - 20 << "\" y2=\""
    << y + 7 << "\" stroke=\"#333333\"/>\n";
  y += row_h;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r % 2 == 1)
      s << "<rect x=\"20\" y=\"" << y - 16 << "\" width=\"" << width - 40
        << "\" height=\"" << row_h << "\" fill=\"#f4f4f4\"/>\n";
    for (std::size_t j = 0; j < rows[r].size() && j < x_off.size() - 1; ++j)
      s << "<text x=\"" << x_off[j] << "\" y=\"" << y << "\" font-size=\"12\">"
        << xml_escape(rows[r][j]) << "</text>\n";
    y += row_h;
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace dramascope
