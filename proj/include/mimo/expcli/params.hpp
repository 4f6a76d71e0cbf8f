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

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "mimo/expcli/table.hpp"

namespace mimo::expcli {

// Invalid configuration: unknown key or table, wrong type, unparsable value.
struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

using Value = std::variant<double, std::int64_t, std::string, std::vector<double>, std::vector<std::int64_t>>;

struct Param
{
    std::string key;
    Value value;
    std::string unit;
    std::string help;
    std::vector<std::string> choices; // allowed strings, empty = any
};

inline std::string value_to_string(const Value &v)
{
    struct
    {
        std::string operator()(double x) const { return format_number(x); }
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(const std::string &s) const { return s; }
        std::string operator()(const std::vector<double> &xs) const
        {
            std::string s = "[";
            for (std::size_t k = 0; k < xs.size(); ++k)
                s += (k ? ", " : "") + format_number(xs[k]);
            return s + "]";
        }
        std::string operator()(const std::vector<std::int64_t> &xs) const
        {
            std::string s = "[";
            for (std::size_t k = 0; k < xs.size(); ++k)
                s += (k ? ", " : "") + std::to_string(xs[k]);
            return s + "]";
        }
    } visitor;
    return std::visit(visitor, v);
}

namespace detail {

inline double parse_real(const std::string &key, const std::string &s)
{
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(s, &used);
    }
    catch (const std::exception &)
    {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw ConfigError("parameter '" + key + "': cannot parse '" + s + "' as a number");
    return v;
}

inline std::int64_t parse_integer(const std::string &key, const std::string &s)
{
    std::size_t used = 0;
    long long v = 0;
    try
    {
        v = std::stoll(s, &used);
    }
    catch (const std::exception &)
    {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw ConfigError("parameter '" + key + "': cannot parse '" + s + "' as an integer");
    return v;
}

inline std::vector<std::string> split_list(std::string s)
{
    if (!s.empty() && s.front() == '[' && s.back() == ']')
        s = s.substr(1, s.size() - 2);
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos)
            out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

} // namespace detail

// Ordered, typed parameter set. Keys and types are fixed by the defaults.
class Params
{
  public:
    Params &add(std::string key, Value v, std::string unit, std::string help, std::vector<std::string> choices = {})
    {
        if (find(key))
            throw std::logic_error("duplicate parameter " + key);
        items_.push_back({std::move(key), std::move(v), std::move(unit), std::move(help), std::move(choices)});
        return *this;
    }

    const std::vector<Param> &items() const { return items_; }
    bool has(const std::string &key) const { return find(key) != nullptr; }

    double real(const std::string &key) const { return std::get<double>(get(key).value); }
    std::int64_t integer(const std::string &key) const { return std::get<std::int64_t>(get(key).value); }
    const std::string &text(const std::string &key) const { return std::get<std::string>(get(key).value); }
    const std::vector<double> &reals(const std::string &key) const
    {
        return std::get<std::vector<double>>(get(key).value);
    }
    const std::vector<std::int64_t> &integers(const std::string &key) const
    {
        return std::get<std::vector<std::int64_t>>(get(key).value);
    }

    // Type-checked assignment; integers are accepted where reals are expected.
    void assign(const std::string &key, const Value &v)
    {
        Param *p = find(key);
        if (!p)
            throw ConfigError("unknown parameter '" + key + "'");
        Value nv = v;
        if (std::holds_alternative<double>(p->value) && std::holds_alternative<std::int64_t>(v))
            nv = static_cast<double>(std::get<std::int64_t>(v));
        if (std::holds_alternative<std::vector<double>>(p->value) &&
            std::holds_alternative<std::vector<std::int64_t>>(v))
        {
            const auto &iv = std::get<std::vector<std::int64_t>>(v);
            nv = std::vector<double>(iv.begin(), iv.end());
        }
        if (nv.index() != p->value.index())
            throw ConfigError("parameter '" + key + "' has the wrong type");
        if (auto *s = std::get_if<std::string>(&nv); s && !p->choices.empty())
        {
            bool ok = false;
            for (const auto &c : p->choices)
                ok = ok || c == *s;
            if (!ok)
                throw ConfigError("parameter '" + key + "': '" + *s + "' is not one of its allowed values");
        }
        p->value = std::move(nv);
    }

    // Assignment from command-line text, parsed according to the default's type.
    void assign_text(const std::string &key, const std::string &text)
    {
        const Param *p = find(key);
        if (!p)
            throw ConfigError("unknown parameter '" + key + "'");
        switch (p->value.index())
        {
        case 0:
            assign(key, detail::parse_real(key, text));
            break;
        case 1:
            assign(key, detail::parse_integer(key, text));
            break;
        case 2:
            assign(key, text);
            break;
        case 3: {
            std::vector<double> xs;
            for (const auto &s : detail::split_list(text))
                xs.push_back(detail::parse_real(key, s));
            assign(key, xs);
            break;
        }
        default: {
            std::vector<std::int64_t> xs;
            for (const auto &s : detail::split_list(text))
                xs.push_back(detail::parse_integer(key, s));
            assign(key, xs);
        }
        }
    }

  private:
    const Param &get(const std::string &key) const
    {
        const Param *p = find(key);
        if (!p)
            throw std::logic_error("parameter " + key + " is not registered");
        return *p;
    }

    Param *find(const std::string &key)
    {
        for (auto &p : items_)
            if (p.key == key)
                return &p;
        return nullptr;
    }

    const Param *find(const std::string &key) const { return const_cast<Params *>(this)->find(key); }

    std::vector<Param> items_;
};

// Run settings that may come from a config table as well as from flags.
struct RunSettings
{
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
};

namespace detail {

inline Value toml_value(const std::string &key, const toml::node &n)
{
    if (auto v = n.as_integer())
        return static_cast<std::int64_t>(v->get());
    if (auto v = n.as_floating_point())
        return v->get();
    if (auto v = n.as_string())
        return v->get();
    if (auto arr = n.as_array())
    {
        bool all_int = true;
        for (const auto &e : *arr)
        {
            if (!e.is_integer() && !e.is_floating_point())
                throw ConfigError("parameter '" + key + "': arrays must hold numbers");
            all_int = all_int && e.is_integer();
        }
        if (all_int)
        {
            std::vector<std::int64_t> out;
            for (const auto &e : *arr)
                out.push_back(e.as_integer()->get());
            return out;
        }
        std::vector<double> out;
        for (const auto &e : *arr)
            out.push_back(e.is_integer() ? static_cast<double>(e.as_integer()->get()) : e.as_floating_point()->get());
        return out;
    }
    throw ConfigError("parameter '" + key + "' has an unsupported TOML type");
}

inline std::uint64_t toml_count(const std::string &key, const toml::node &n)
{
    auto v = n.as_integer();
    if (!v || v->get() < 0)
        throw ConfigError("'" + key + "' must be a non-negative integer");
    return static_cast<std::uint64_t>(v->get());
}

} // namespace detail

// Applies one flat table (`seed` and `trials` are reserved keys).
inline void apply_table(const toml::table &tbl, const std::string &where, Params &params, RunSettings &settings)
{
    for (const auto &[k, node] : tbl)
    {
        std::string key(k.str());
        if (key == "seed")
            settings.seed = detail::toml_count(where + ".seed", node);
        else if (key == "trials")
            settings.trials = detail::toml_count(where + ".trials", node);
        else if (node.is_table())
            throw ConfigError("nested table '" + where + "." + key + "' is not allowed");
        else if (!params.has(key))
            throw ConfigError("unknown key '" + key + "' in table [" + where + "]");
        else
            params.assign(key, detail::toml_value(key, node));
    }
}

inline toml::table parse_toml_file(const std::string &path)
{
    try
    {
        return toml::parse_file(path);
    }
    catch (const toml::parse_error &e)
    {
        throw ConfigError("cannot parse " + path + ": " + std::string(e.description()));
    }
}

inline toml::table parse_toml_text(const std::string &text)
{
    try
    {
        return toml::parse(text);
    }
    catch (const toml::parse_error &e)
    {
        throw ConfigError("cannot parse configuration: " + std::string(e.description()));
    }
}

} // namespace mimo::expcli
