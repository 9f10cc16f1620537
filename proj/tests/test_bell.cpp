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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "trimode/bell.hpp"

using namespace trimode;

namespace {

const double kPi3 = std::pow(std::numbers::pi, 3);
const Range kBGrid(0.01, 0.01, 2.0);

BellSetting zero_setting() { return BellSetting{}; }

}  // namespace

TEST(B3, AllZeroSetting) {
    const auto s = make_state(0.4, CoherentAmplitudes(0.2, 0.1, -0.3));
    EXPECT_NEAR(b3(s, zero_setting()), 2 * kPi3 * wigner(s, Vector3::Zero(), Vector3::Zero()), 1e-14);
    EXPECT_NEAR(b3(make_state(0.0, CoherentAmplitudes()), zero_setting()), 2.0, 1e-14);
}

TEST(B3, SettingValidation) {
    EXPECT_THROW(Fig2Config::setting(0.0), InvalidParameter);
    EXPECT_THROW(Fig2Config::setting(-0.1), InvalidParameter);
    BellSetting bad;
    bad.beta[1] = Complex(std::nan(""), 0.0);
    EXPECT_THROW(b3(make_state(0.1, CoherentAmplitudes()), bad), InvalidParameter);
}

TEST(B3, LocalBoundWithoutSqueezing) {
    for (const auto& alpha : {Fig2Config::alpha(), CoherentAmplitudes()}) {
        const auto s = make_state(0.0, alpha);
        for (double b : kBGrid.values()) EXPECT_LE(b3(s, Fig2Config::setting(b)), 2.0 + 1e-9) << b;
    }
}

TEST(B3, BoundedByFour) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const auto s = make_state(2.0 * u(rng), CoherentAmplitudes(u(rng), Complex(u(rng), u(rng)), u(rng)));
        BellSetting set;
        for (int j = 0; j < 3; ++j) {
            set.beta[j] = Complex(u(rng), u(rng));
            set.beta_prime[j] = Complex(u(rng), u(rng));
        }
        EXPECT_LT(std::abs(b3(s, set)), 4.0);
    }
}

TEST(B3, SmallBLimit) {
    const auto s = make_state(0.3, Fig2Config::alpha());
    const double limit = 2 * kPi3 * wigner(s, Vector3::Zero(), Vector3::Zero());
    EXPECT_NEAR(b3(s, Fig2Config::setting(1e-7)), limit, 1e-6);
    EXPECT_LE(limit, 2.0);
}

TEST(B3, ContinuousAlongB) {
    for (double lambda : {0.0, 0.3, 1.0}) {
        const auto s = make_state(lambda, Fig2Config::alpha());
        std::vector<double> diffs;
        double prev = b3(s, Fig2Config::setting(kBGrid.start));
        for (double b : kBGrid.values()) {
            const double v = b3(s, Fig2Config::setting(b));
            ASSERT_TRUE(std::isfinite(v));
            diffs.push_back(std::abs(v - prev));
            prev = v;
        }
        // Each step is compared with the median of the steps around it.
        constexpr std::size_t kHalfWindow = 5;
        for (std::size_t i = 1; i < diffs.size(); ++i) {
            const std::size_t lo = i > kHalfWindow ? i - kHalfWindow : 1;
            const std::size_t hi = std::min(diffs.size(), i + kHalfWindow + 1);
            std::vector<double> window(diffs.begin() + static_cast<std::ptrdiff_t>(lo),
                                       diffs.begin() + static_cast<std::ptrdiff_t>(hi));
            std::nth_element(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2), window.end());
            EXPECT_LE(diffs[i], 10 * window[window.size() / 2] + 1e-12) << "lambda " << lambda << " step " << i;
        }
    }
}

TEST(B3, ModeExchangeSymmetry) {
    const CoherentAmplitudes a(Complex(0.1, 0.2), Complex(-0.3, 0.05), 0.4);
    const CoherentAmplitudes swapped(a[1], a[0], a[2]);
    BellSetting set;
    set.beta = {Complex(0.1, 0.0), Complex(0.0, -0.2), Complex(0.3, 0.1)};
    set.beta_prime = {Complex(-0.2, 0.1), Complex(0.25, 0.0), Complex(0.0, 0.0)};
    BellSetting set_swapped = set;
    std::swap(set_swapped.beta[0], set_swapped.beta[1]);
    std::swap(set_swapped.beta_prime[0], set_swapped.beta_prime[1]);
    for (double lambda : {0.2, 0.7})
        EXPECT_NEAR(b3(make_state(lambda, a), set), b3(make_state(lambda, swapped), set_swapped), 1e-14);
}

TEST(MaximizeOverB, SqueezedVacuumViolates) {
    for (double lambda : {0.2, 0.5, 1.0}) {
        const auto row = maximize_over_b(make_state(lambda, CoherentAmplitudes()), kBGrid);
        EXPECT_GT(row.b3_max, 2.0) << lambda;
        EXPECT_GE(row.b_star, kBGrid.start);
        EXPECT_LE(row.b_star, kBGrid.end);
    }
}

TEST(MaximizeOverB, CaptionAmplitudesStayLocal) {
    // With alpha = (0.4, 0.5, 0.6) the one-parameter displacement family never
    // reaches the local bound; see the errata report (F2).
    for (double lambda : {0.1, 0.5, 1.0}) {
        const auto row = maximize_over_b(make_state(lambda, Fig2Config::alpha()), kBGrid);
        EXPECT_LT(row.b3_max, 2.0) << lambda;
    }
}

TEST(MaximizeOverB, GoldenSectionImprovesGrid) {
    const auto s = make_state(0.5, CoherentAmplitudes());
    const auto row = maximize_over_b(s, kBGrid);
    double grid_best = -10.0;
    for (double b : kBGrid.values()) grid_best = std::max(grid_best, b3(s, Fig2Config::setting(b)));
    EXPECT_GE(row.b3_max, grid_best);
    EXPECT_NEAR(row.b3_max, b3(s, Fig2Config::setting(row.b_star)), 1e-14);
}

TEST(MaximizeOverB, GridEdgeCases) {
    const auto row = maximize_over_b(make_state(0.3, CoherentAmplitudes()), Range(0.5, 1.0, 0.5));
    EXPECT_DOUBLE_EQ(row.b_star, 0.5);
    EXPECT_THROW(maximize_over_b(make_state(0.3, CoherentAmplitudes()), Range(0.0, 0.1, 1.0)), InvalidParameter);
}

TEST(Fig2Scan, SqueezedVacuumCurve) {
    const auto rows = fig2_scan(Range(0.0, 0.1, 1.0), kBGrid, CoherentAmplitudes());
    ASSERT_EQ(rows.size(), 11u);
    EXPECT_LE(rows.front().b3_max, 2.0 + 1e-9);
    for (const auto& r : rows) {
        if (r.lambda >= 0.2) {
            EXPECT_GT(r.b3_max, 2.0) << r.lambda;
        }
    }
    const auto tail = fig2_scan(Range(3.0, 0.5, 5.0), kBGrid, CoherentAmplitudes());
    double lo = 10, hi = -10;
    for (const auto& r : tail) {
        lo = std::min(lo, r.b3_max);
        hi = std::max(hi, r.b3_max);
    }
    EXPECT_LT(hi - lo, 1e-3);
    EXPECT_GT(lo, 2.0);
}

TEST(OracleCheck, AgreesWithFockSpace) {
    const auto cmp = b3_oracle_check(0.2, Fig2Config::alpha(), Fig2Config::setting(0.3), 14);
    EXPECT_LT(cmp.difference(), 1e-3);
    const auto zero = b3_oracle_check(0.0, CoherentAmplitudes(0.2, 0.0, 0.1), zero_setting(), 10);
    const auto s = make_state(0.0, CoherentAmplitudes(0.2, 0.0, 0.1));
    EXPECT_NEAR(zero.analytic, 2 * kPi3 * wigner(s, Vector3::Zero(), Vector3::Zero()), 1e-14);
    EXPECT_NEAR(zero.oracle, zero.analytic, 1e-9);
    EXPECT_THROW(b3_oracle_check(0.5, CoherentAmplitudes(), zero_setting()), InvalidParameter);
}

TEST(GlobalSearch, DoesNotLoseGround) {
    const auto s = make_state(0.5, CoherentAmplitudes());
    const auto seed = Fig2Config::setting(maximize_over_b(s, kBGrid).b_star);
    const auto result = global_search_heuristic(s, seed);
    EXPECT_GE(result.b3, b3(s, seed) - 1e-12);
    EXPECT_LT(result.b3, 4.0);
    EXPECT_NEAR(result.b3, b3(s, result.setting), 1e-12);
}
