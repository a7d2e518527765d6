// SPDX-License-Identifier: Apache-2.0
//
// holosense: radio-image sensing workbench for large intelligent surfaces
// Copyright (C) 2026 The holosense authors
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

#include "ini_util.hpp"

#include <boost/property_tree/ini_parser.hpp>

#include <cerrno>
#include <cmath>
#include <cstdlib>

namespace holosense::detail
{
    Tree read_ini(const std::string &path)
    {
        Tree tree;
        try
        {
            boost::property_tree::ini_parser::read_ini(path, tree);
        }
        catch (const boost::property_tree::ini_parser_error &e)
        {
            throw ConfigError(e.what());
        }
        return tree;
    }

    std::string trim(const std::string &text)
    {
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first == std::string::npos)
            return {};
        const auto last = text.find_last_not_of(" \t\r\n");
        return text.substr(first, last - first + 1);
    }

    std::vector<std::string> split(const std::string &text, char sep)
    {
        std::vector<std::string> out;
        std::string::size_type begin = 0;
        while (true)
        {
            const auto pos = text.find(sep, begin);
            out.push_back(text.substr(begin, pos == std::string::npos ? std::string::npos : pos - begin));
            if (pos == std::string::npos)
                break;
            begin = pos + 1;
        }
        return out;
    }

    double parse_double(const std::string &text, const std::string &context)
    {
        const std::string t = trim(text);
        if (t == "inf" || t == "+inf")
            return INFINITY;
        if (t == "-inf")
            return -INFINITY;
        if (t.empty())
            throw ConfigError(context + ": empty numeric value");
        char *end = nullptr;
        errno = 0;
        const double v = std::strtod(t.c_str(), &end);
        if (end != t.c_str() + t.size() || errno == ERANGE || std::isnan(v))
            throw ConfigError(context + ": cannot parse '" + t + "' as a number");
        return v;
    }

    std::optional<std::string> raw(const Tree &tree, const std::string &key)
    {
        if (auto v = tree.get_optional<std::string>(key))
            return trim(*v);
        return std::nullopt;
    }

    double get_double(const Tree &tree, const std::string &key, double fallback)
    {
        const auto v = raw(tree, key);
        return v ? parse_double(*v, key) : fallback;
    }

    int get_int(const Tree &tree, const std::string &key, int fallback)
    {
        const auto v = raw(tree, key);
        if (!v)
            return fallback;
        const double d = parse_double(*v, key);
        if (d != std::floor(d) || std::abs(d) > 2147483647.0)
            throw ConfigError(key + ": expected an integer, got '" + *v + "'");
        return int(d);
    }

    std::string get_string(const Tree &tree, const std::string &key, const std::string &fallback)
    {
        const auto v = raw(tree, key);
        return v ? *v : fallback;
    }

    Vec3 get_vec3(const Tree &tree, const std::string &key, const Vec3 &fallback)
    {
        const auto v = raw(tree, key);
        if (!v)
            return fallback;
        const auto parts = split(*v, ',');
        if (parts.size() != 3)
            throw ConfigError(key + ": expected three comma-separated values");
        return {parse_double(parts[0], key), parse_double(parts[1], key), parse_double(parts[2], key)};
    }

    std::vector<double> get_doubles(const Tree &tree, const std::string &key, const std::vector<double> &fallback)
    {
        const auto v = raw(tree, key);
        if (!v)
            return fallback;
        std::vector<double> out;
        for (const auto &part : split(*v, ','))
            out.push_back(parse_double(part, key));
        return out;
    }

    std::vector<int> get_ints(const Tree &tree, const std::string &key, const std::vector<int> &fallback)
    {
        const auto v = raw(tree, key);
        if (!v)
            return fallback;
        std::vector<int> out;
        for (const auto &part : split(*v, ','))
        {
            const double d = parse_double(part, key);
            if (d != std::floor(d))
                throw ConfigError(key + ": expected integers");
            out.push_back(int(d));
        }
        return out;
    }

    std::vector<std::string> get_strings(const Tree &tree, const std::string &key, const std::vector<std::string> &fallback)
    {
        const auto v = raw(tree, key);
        if (!v)
            return fallback;
        std::vector<std::string> out;
        for (const auto &part : split(*v, ','))
            out.push_back(trim(part));
        return out;
    }

} // namespace holosense::detail
