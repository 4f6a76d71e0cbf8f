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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mimo/error.hpp"

namespace mimo::expcli {

struct Column
{
    std::string name;
    std::string unit; // "-" for dimensionless quantities
};

// Line-plot hints for the PNG rendering. Each distinct combination of the
// group_by column values together with each y column forms one series.
struct PlotSpec
{
    std::string x;
    std::vector<std::string> ys;
    std::vector<std::string> group_by;
    bool log_x = false;
    bool log_y = false;
};

class ResultTable
{
  public:
    ResultTable() = default;
    explicit ResultTable(std::vector<Column> columns) : columns_(std::move(columns)) {}

    const std::vector<Column> &columns() const { return columns_; }
    const std::vector<std::vector<double>> &rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }

    void add_row(std::vector<double> row)
    {
        require_dims(row.size() == columns_.size(), "row width does not match the column count");
        rows_.push_back(std::move(row));
    }

    std::size_t index_of(const std::string &name) const
    {
        for (std::size_t k = 0; k < columns_.size(); ++k)
            if (columns_[k].name == name)
                return k;
        throw DomainError("no column named '" + name + "'");
    }

    double at(std::size_t row, const std::string &name) const { return rows_.at(row)[index_of(name)]; }

    std::vector<double> column(const std::string &name) const
    {
        std::size_t k = index_of(name);
        std::vector<double> out;
        out.reserve(rows_.size());
        for (const auto &r : rows_)
            out.push_back(r[k]);
        return out;
    }

    // Rows whose `key` columns equal the given values.
    std::vector<std::size_t> select(const std::vector<std::pair<std::string, double>> &key) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < rows_.size(); ++i)
        {
            bool ok = true;
            for (const auto &[name, v] : key)
                ok = ok && rows_[i][index_of(name)] == v;
            if (ok)
                out.push_back(i);
        }
        return out;
    }

    // Ordered "# key: value" lines written above the header.
    void set_meta(const std::string &key, const std::string &value)
    {
        for (auto &kv : meta_)
            if (kv.first == key)
            {
                kv.second = value;
                return;
            }
        meta_.emplace_back(key, value);
    }

    const std::vector<std::pair<std::string, std::string>> &meta() const { return meta_; }

    PlotSpec plot;

  private:
    std::vector<Column> columns_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::pair<std::string, std::string>> meta_;
};

// Locale-independent "%.10g"; non-finite values as inf, -inf, nan.
inline std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline void write_csv(std::ostream &os, const ResultTable &t)
{
    for (const auto &[k, v] : t.meta())
        os << "# " << k << ": " << v << '\n';
    for (std::size_t k = 0; k < t.columns().size(); ++k)
        os << (k ? "," : "") << t.columns()[k].name << '[' << t.columns()[k].unit << ']';
    os << '\n';
    for (const auto &r : t.rows())
    {
        for (std::size_t k = 0; k < r.size(); ++k)
            os << (k ? "," : "") << format_number(r[k]);
        os << '\n';
    }
}

inline std::string to_csv(const ResultTable &t)
{
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

inline void write_csv_file(const std::string &path, const ResultTable &t)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_csv(f, t);
}

} // namespace mimo::expcli
