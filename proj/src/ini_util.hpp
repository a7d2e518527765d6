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

#ifndef HOLOSENSE_INI_UTIL_HPP
#define HOLOSENSE_INI_UTIL_HPP

// Typed accessors over a boost INI property tree. Lists are comma separated.

#include "holosense/errors.hpp"
#include "holosense/geometry.hpp"

#include <boost/property_tree/ptree.hpp>

#include <optional>
#include <string>
#include <vector>

namespace holosense::detail
{
    using Tree = boost::property_tree::ptree;

    Tree read_ini(const std::string &path);

    std::optional<std::string> raw(const Tree &tree, const std::string &key);

    double get_double(const Tree &tree, const std::string &key, double fallback);
    int get_int(const Tree &tree, const std::string &key, int fallback);
    std::string get_string(const Tree &tree, const std::string &key, const std::string &fallback);
    Vec3 get_vec3(const Tree &tree, const std::string &key, const Vec3 &fallback);
    std::vector<double> get_doubles(const Tree &tree, const std::string &key, const std::vector<double> &fallback);
    std::vector<int> get_ints(const Tree &tree, const std::string &key, const std::vector<int> &fallback);
    std::vector<std::string> get_strings(const Tree &tree, const std::string &key, const std::vector<std::string> &fallback);

    // Parses a full-string number; "inf" and "-inf" are accepted
    double parse_double(const std::string &text, const std::string &context);
    std::vector<std::string> split(const std::string &text, char sep);
    std::string trim(const std::string &text);

} // namespace holosense::detail

#endif
