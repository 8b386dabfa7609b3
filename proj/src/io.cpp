// Copyright 2026 The kzmagic Authors
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

#include "kzmagic/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "kzmagic/errors.hpp"

namespace kzmagic {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMargin = 60.0;

const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};

std::string escape_xml(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void atomic_write_file(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
    if (ec) throw ConfigError("cannot create output directory '" + target.parent_path().string() + "'");
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw ConfigError("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target, ec);
    if (ec) throw ConfigError("cannot move '" + tmp.string() + "' to '" + path + "': " + ec.message());
}

std::string render_svg(const PlotSpec &spec, const std::vector<PlotSeries> &series) {
    auto tx = [&](double v) { return spec.log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return spec.log_y ? std::log10(v) : v; };
    auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!spec.log_x || x > 0) && (!spec.log_y || y > 0);
    };

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const PlotSeries &s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            x0 = std::min(x0, tx(s.x[i]));
            x1 = std::max(x1, tx(s.x[i]));
            y0 = std::min(y0, ty(s.y[i]));
            y1 = std::max(y1, ty(s.y[i]));
        }
    }
    if (!(x1 >= x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;
    const double pw = kWidth - 2 * kMargin;
    const double ph = kHeight - 2 * kMargin;
    auto px = [&](double v) { return kMargin + (tx(v) - x0) / (x1 - x0) * pw; };
    auto py = [&](double v) { return kHeight - kMargin - (ty(v) - y0) / (y1 - y0) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kMargin / 2 << "\" text-anchor=\"middle\" font-size=\"14\">"
       << escape_xml(spec.title) << "</text>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
       << escape_xml(spec.x_label) << (spec.log_x ? " (log)" : "") << "</text>\n";
    os << "<text transform=\"translate(15," << kHeight / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape_xml(spec.y_label) << (spec.log_y ? " (log)" : "") << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = x0 + (x1 - x0) * i / 4.0;
        const double fy = y0 + (y1 - y0) * i / 4.0;
        const double vx = spec.log_x ? std::pow(10.0, fx) : fx;
        const double vy = spec.log_y ? std::pow(10.0, fy) : fy;
        os << "<text x=\"" << px(vx) << "\" y=\"" << kHeight - kMargin + 16 << "\" text-anchor=\"middle\">"
           << format_number(std::round(vx * 1e3) / 1e3) << "</text>\n";
        os << "<text x=\"" << kMargin - 6 << "\" y=\"" << py(vy) + 4 << "\" text-anchor=\"end\">"
           << format_number(std::round(vy * 1e3) / 1e3) << "</text>\n";
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        const PlotSeries &s = series[k];
        const char *color = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (usable(s.x[i], s.y[i])) os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        os << "\"/>\n";
        if (spec.markers) {
            for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                if (!usable(s.x[i], s.y[i])) continue;
                os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\"" << color
                   << "\"/>\n";
            }
        }
        os << "<text x=\"" << kWidth - kMargin - 6 << "\" y=\"" << kMargin + 16 + 14 * k
           << "\" text-anchor=\"end\" fill=\"" << color << "\">" << escape_xml(s.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace kzmagic
