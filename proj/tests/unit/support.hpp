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

#ifndef HOLOSENSE_TEST_SUPPORT_HPP
#define HOLOSENSE_TEST_SUPPORT_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

namespace testing
{
    // Fresh, empty scratch directory under the system temp dir
    inline std::filesystem::path scratch_dir(const std::string &name)
    {
        const auto dir = std::filesystem::temp_directory_path() / ("holosense_test_" + name);
        std::filesystem::remove_all(dir);
        std::filesystem::create_directories(dir);
        return dir;
    }

    inline std::string slurp(const std::filesystem::path &path)
    {
        std::ifstream is(path, std::ios::binary);
        return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
    }

    inline void spit(const std::filesystem::path &path, const std::string &text)
    {
        std::ofstream os(path, std::ios::binary);
        os << text;
    }

    inline double rel_diff(double a, double b)
    {
        const double scale = std::max(std::abs(a), std::abs(b));
        return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
    }
} // namespace testing

#endif
