// Copyright 2026 The trimode Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "trimode/error.hpp"

namespace trimode {

/// Inclusive arithmetic grid start, start + step, ..., end. The end point is
/// kept when it lies within 1e-12 (relative to the span) of a grid node.
struct Range {
    double start = 0.0;
    double step = 1.0;
    double end = 0.0;

    static constexpr double kSlack = 1e-12;
    static constexpr std::size_t kMaxNodes = 10'000'000;

    Range() = default;
    Range(double start_, double step_, double end_) : start(start_), step(step_), end(end_) {
        if (!std::isfinite(start) || !std::isfinite(step) || !std::isfinite(end)) {
            throw InvalidParameter("range bounds must be finite");
        }
        if (!(step > 0.0)) throw InvalidParameter("range step must be positive");
        if (end < start) throw InvalidParameter("range end must not precede start");
    }

    std::size_t size() const {
        const double span = end - start;
        const double slack = kSlack * std::max(1.0, std::abs(span) / step);
        return static_cast<std::size_t>(std::floor(span / step + slack)) + 1;
    }

    /// Nodes are computed as start + i * step (no accumulated rounding).
    std::vector<double> values() const {
        std::vector<double> out;
        const double span = (end - start) / step;
        if (span >= static_cast<double>(kMaxNodes)) throw InvalidParameter("range has too many nodes");
        const std::size_t n = size();
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
        return out;
    }

    /// Parses "start:step:end".
    static Range parse(const std::string& text) {
        const auto c1 = text.find(':');
        const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos ||
            text.find(':', c2 + 1) != std::string::npos) {
            throw InvalidParameter("range must have the form start:step:end, got '" + text + "'");
        }
        auto num = [&](const std::string& s) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(s, &used);
            } catch (const std::exception&) {
                throw InvalidParameter("bad number '" + s + "' in range '" + text + "'");
            }
            if (used != s.size()) throw InvalidParameter("bad number '" + s + "' in range '" + text + "'");
            return v;
        };
        return {num(text.substr(0, c1)), num(text.substr(c1 + 1, c2 - c1 - 1)), num(text.substr(c2 + 1))};
    }
};

}  // namespace trimode
