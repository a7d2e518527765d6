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

#ifndef HOLOSENSE_ERRORS_HPP
#define HOLOSENSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace holosense
{
    // Base of every error the library raises. kind() names the error class
    // printed by the CLI diagnostic line.
    class Error : public std::runtime_error
    {
    public:
        Error(const std::string &kind, const std::string &what)
            : std::runtime_error(what), kind_(kind) {}
        const std::string &kind() const noexcept { return kind_; }

    private:
        std::string kind_;
    };

#define HOLOSENSE_DEFINE_ERROR(Name, tag)                                      \
    class Name : public Error                                                  \
    {                                                                          \
    public:                                                                    \
        explicit Name(const std::string &what) : Error(tag, what) {}           \
    };

    HOLOSENSE_DEFINE_ERROR(GeometryError, "geometry error")
    HOLOSENSE_DEFINE_ERROR(ShapeError, "shape error")
    HOLOSENSE_DEFINE_ERROR(FormatError, "format error")
    HOLOSENSE_DEFINE_ERROR(CalibrationError, "calibration error")
    HOLOSENSE_DEFINE_ERROR(TrainingError, "training error")
    HOLOSENSE_DEFINE_ERROR(SplitError, "split error")
    HOLOSENSE_DEFINE_ERROR(NumericError, "numeric error")
    HOLOSENSE_DEFINE_ERROR(ConfigError, "config error")
    HOLOSENSE_DEFINE_ERROR(IoError, "I/O error")

#undef HOLOSENSE_DEFINE_ERROR

} // namespace holosense

#endif
