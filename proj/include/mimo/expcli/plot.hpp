// SPDX-License-Identifier: Apache-2.0
//
// mimo-sim: massive MIMO simulation with non-ideal transceiver hardware
// Copyright (C) 2026 The mimo-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mimo/expcli/table.hpp"

namespace mimo::expcli {

struct Rgb
{
    std::uint8_t r = 0, g = 0, b = 0;
};

class Canvas
{
  public:
    Canvas(int w, int h) : w_(w), h_(h), px_(static_cast<std::size_t>(w * h), Rgb{255, 255, 255}) {}

    int width() const { return w_; }
    int height() const { return h_; }

    void set(int x, int y, Rgb c)
    {
        if (x >= 0 && y >= 0 && x < w_ && y < h_)
            px_[static_cast<std::size_t>(y * w_ + x)] = c;
    }

    Rgb get(int x, int y) const { return px_.at(static_cast<std::size_t>(y * w_ + x)); }

    // Bresenham with a square pen of the given width.
    void line(int x0, int y0, int x1, int y1, Rgb c, int pen = 1)
    {
        int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
        int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
        int err = dx + dy;
        for (;;)
        {
            for (int a = 0; a < pen; ++a)
                for (int b = 0; b < pen; ++b)
                    set(x0 + a - pen / 2, y0 + b - pen / 2, c);
            if (x0 == x1 && y0 == y1)
                break;
            int e2 = 2 * err;
            if (e2 >= dy)
            {
                err += dy;
                x0 += sx;
            }
            if (e2 <= dx)
            {
                err += dx;
                y0 += sy;
            }
        }
    }

    // 3x5 glyphs for digits and number punctuation, drawn at `scale`.
    void text(int x, int y, const std::string &s, Rgb c, int scale = 2)
    {
        static const std::map<char, std::array<const char *, 5>> glyphs = {
            {'0', {"111", "101", "101", "101", "111"}}, {'1', {"010", "110", "010", "010", "111"}},
            {'2', {"111", "001", "111", "100", "111"}}, {'3', {"111", "001", "111", "001", "111"}},
            {'4', {"101", "101", "111", "001", "001"}}, {'5', {"111", "100", "111", "001", "111"}},
            {'6', {"111", "100", "111", "101", "111"}}, {'7', {"111", "001", "010", "010", "010"}},
            {'8', {"111", "101", "111", "101", "111"}}, {'9', {"111", "101", "111", "001", "111"}},
            {'.', {"000", "000", "000", "000", "010"}}, {'-', {"000", "000", "111", "000", "000"}},
            {'+', {"000", "010", "111", "010", "000"}}, {'e', {"000", "111", "111", "100", "111"}},
        };
        for (char ch : s)
        {
            auto it = glyphs.find(ch);
            if (it != glyphs.end())
                for (int r = 0; r < 5; ++r)
                    for (int col = 0; col < 3; ++col)
                        if (it->second[r][col] == '1')
                            for (int a = 0; a < scale; ++a)
                                for (int b = 0; b < scale; ++b)
                                    set(x + col * scale + a, y + r * scale + b, c);
            x += 4 * scale;
        }
    }

    void write_png(const std::string &path) const
    {
        FILE *fp = std::fopen(path.c_str(), "wb");
        if (!fp)
            throw std::runtime_error("cannot open " + path + " for writing");
        png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        png_infop info = png ? png_create_info_struct(png) : nullptr;
        if (!png || !info || setjmp(png_jmpbuf(png)))
        {
            png_destroy_write_struct(&png, &info);
            std::fclose(fp);
            throw std::runtime_error("libpng failed writing " + path);
        }
        png_init_io(png, fp);
        png_set_IHDR(png, info, static_cast<png_uint_32>(w_), static_cast<png_uint_32>(h_), 8, PNG_COLOR_TYPE_RGB,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);
        std::vector<png_byte> row(static_cast<std::size_t>(3 * w_));
        for (int y = 0; y < h_; ++y)
        {
            for (int x = 0; x < w_; ++x)
            {
                Rgb c = get(x, y);
                row[3 * x] = c.r;
                row[3 * x + 1] = c.g;
                row[3 * x + 2] = c.b;
            }
            png_write_row(png, row.data());
        }
        png_write_end(png, nullptr);
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
    }

  private:
    int w_, h_;
    std::vector<Rgb> px_;
};

namespace detail {

inline Rgb series_color(std::size_t k)
{
    static const Rgb palette[] = {{31, 119, 180}, {255, 127, 14}, {44, 160, 44}, {214, 39, 40},
                                  {148, 103, 189}, {140, 86, 75}, {227, 119, 194}, {127, 127, 127},
                                  {188, 189, 34}, {23, 190, 207}};
    return palette[k % 10];
}

struct Axis
{
    double lo = 0.0, hi = 1.0;
    bool log = false;

    double map(double v) const
    {
        double a = log ? std::log10(v) : v;
        return (a - lo) / (hi - lo);
    }

    static Axis fit(const std::vector<double> &vals, bool log)
    {
        Axis ax;
        ax.log = log;
        double lo = INFINITY, hi = -INFINITY;
        for (double v : vals)
        {
            if (!std::isfinite(v) || (log && v <= 0.0))
                continue;
            double a = log ? std::log10(v) : v;
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
        if (!std::isfinite(lo))
            lo = 0.0, hi = 1.0;
        if (hi - lo < 1e-12)
            lo -= 0.5, hi += 0.5;
        double pad = log ? 0.0 : 0.05 * (hi - lo);
        ax.lo = lo - pad;
        ax.hi = hi + pad;
        return ax;
    }

    // Decades on log axes, about five round steps on linear axes.
    std::vector<double> ticks() const
    {
        std::vector<double> t;
        if (log)
        {
            for (double e = std::ceil(lo); e <= hi + 1e-9; e += 1.0)
                t.push_back(std::pow(10.0, e));
            return t;
        }
        double raw = (hi - lo) / 5.0;
        double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag * (raw / mag < 2 ? 1 : raw / mag < 5 ? 2 : 5);
        for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step)
            t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
        return t;
    }
};

inline std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

} // namespace detail

// Line plot of the table according to its PlotSpec. Series are ordered by
// first appearance of their group key; points keep row order.
inline void render_plot(const ResultTable &t, const std::string &path, int width = 900, int height = 560)
{
    const PlotSpec &spec = t.plot;
    require(!spec.x.empty() && !spec.ys.empty(), "table has no plot specification");
    const int left = 80, right = 20, top = 20, bottom = 50;
    const int pw = width - left - right, ph = height - top - bottom;

    std::vector<double> xs = t.column(spec.x), all_y;
    for (const auto &y : spec.ys)
    {
        auto c = t.column(y);
        all_y.insert(all_y.end(), c.begin(), c.end());
    }
    detail::Axis ax = detail::Axis::fit(xs, spec.log_x);
    detail::Axis ay = detail::Axis::fit(all_y, spec.log_y);

    Canvas cv(width, height);
    const Rgb grid{225, 225, 225}, ink{0, 0, 0};
    auto px = [&](double v) { return left + static_cast<int>(std::lround(ax.map(v) * pw)); };
    auto py = [&](double v) { return top + ph - static_cast<int>(std::lround(ay.map(v) * ph)); };
    for (double v : ax.ticks())
    {
        cv.line(px(v), top, px(v), top + ph, grid);
        std::string s = detail::tick_label(v);
        cv.text(px(v) - static_cast<int>(s.size()) * 4, top + ph + 8, s, ink);
    }
    for (double v : ay.ticks())
    {
        cv.line(left, py(v), left + pw, py(v), grid);
        std::string s = detail::tick_label(v);
        cv.text(left - 8 - static_cast<int>(s.size()) * 8, py(v) - 5, s, ink);
    }
    cv.line(left, top, left, top + ph, ink);
    cv.line(left, top + ph, left + pw, top + ph, ink);
    cv.line(left + pw, top, left + pw, top + ph, ink);
    cv.line(left, top, left + pw, top, ink);

    std::vector<std::size_t> gcols;
    for (const auto &g : spec.group_by)
        gcols.push_back(t.index_of(g));
    std::vector<std::vector<double>> keys;
    std::vector<std::size_t> key_of(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        std::vector<double> k;
        for (auto c : gcols)
            k.push_back(t.rows()[i][c]);
        auto it = std::find(keys.begin(), keys.end(), k);
        key_of[i] = static_cast<std::size_t>(it - keys.begin());
        if (it == keys.end())
            keys.push_back(k);
    }
    const std::size_t xk = t.index_of(spec.x);
    std::size_t series = 0;
    for (const auto &y : spec.ys)
    {
        const std::size_t yk = t.index_of(y);
        for (std::size_t g = 0; g < keys.size(); ++g, ++series)
        {
            Rgb c = detail::series_color(series);
            bool have = false;
            int lx = 0, ly = 0;
            for (std::size_t i = 0; i < t.size(); ++i)
            {
                if (key_of[i] != g)
                    continue;
                double xv = t.rows()[i][xk], yv = t.rows()[i][yk];
                bool ok = std::isfinite(xv) && std::isfinite(yv) && !(spec.log_x && xv <= 0) &&
                          !(spec.log_y && yv <= 0);
                if (!ok)
                {
                    have = false;
                    continue;
                }
                int cx = px(xv), cy = py(yv);
                if (have)
                    cv.line(lx, ly, cx, cy, c, 2);
                for (int a = -2; a <= 2; ++a)
                    for (int b = -2; b <= 2; ++b)
                        cv.set(cx + a, cy + b, c);
                lx = cx, ly = cy, have = true;
            }
        }
    }
    cv.write_png(path);
}

} // namespace mimo::expcli
