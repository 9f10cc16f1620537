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
#include <array>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "trimode/photon_statistics.hpp"

using namespace trimode;

namespace {

CoherentAmplitudes random_alpha(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(GMPair, VanishesAtZeroAmplitude) {
    const auto gm = gm_pair(CoherentAmplitudes(), 0.4);
    EXPECT_EQ(gm.G, Complex(0.0));
    EXPECT_EQ(gm.M, Complex(0.0));
}

TEST(GMPair, RealAmplitudesGiveRealProduct) {
    for (double lambda : {0.1, 0.5, 1.3}) {
        const auto gm = gm_pair(CoherentAmplitudes(0.3, -1.1, 0.7), lambda);
        const Complex prod = gm.G * gm.M;
        EXPECT_LT(std::abs(prod.imag()), 1e-12 * std::max(1.0, std::abs(prod)));
    }
}

TEST(GMPair, ProductMatchesClosedForm) {
    // alpha = (1,1,1), lambda = 1: the closed form gives 12 + 12 coth 4.
    const CoherentAmplitudes ones(1.0, 1.0, 1.0);
    const auto gm = gm_pair(ones, 1.0);
    const Complex closed = gm_product_closed_form(ones, 1.0);
    EXPECT_LT(std::abs(gm.G * gm.M - closed), 1e-12);
    EXPECT_NEAR(closed.real(), 12.0 + 12.0 / std::tanh(4.0), 1e-12);
}

TEST(GMPair, SquaresMatchClosedForm) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 10; ++t) {
        const auto a = random_alpha(rng, 1.0);
        const double lambda = std::uniform_real_distribution<double>(0.05, 1.5)(rng);
        const auto gm = gm_pair(a, lambda);
        const auto [g2, m2] = gm_squares_closed_form(a, lambda);
        EXPECT_LT(std::abs(gm.G * gm.G - g2), 1e-10 * std::max(1.0, std::abs(g2)));
        EXPECT_LT(std::abs(gm.M * gm.M - m2), 1e-10 * std::max(1.0, std::abs(m2)));
        EXPECT_LT(std::abs(gm.G * gm.M - gm_product_closed_form(a, lambda)), 1e-10 * std::max(1.0, std::abs(gm.G * gm.M)));
    }
}

TEST(GMPair, SingularAtZeroSqueezing) {
    EXPECT_THROW(gm_pair(CoherentAmplitudes(1.0, 0.0, 0.0), 0.0), SingularParameter);
    EXPECT_THROW(mean_power_paper(2, CoherentAmplitudes(1.0, 0.0, 0.0), 0.0), InvalidParameter);
}

TEST(MeanPowerPaper, HermiteSeriesMatchesClosedForms) {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 10; ++t) {
        const auto a = random_alpha(rng, 1.0);
        const double lambda = std::uniform_real_distribution<double>(0.05, 1.2)(rng);
        const double k1 = mean_power_paper(1, a, lambda);
        EXPECT_LT(rel(k1, first_factorial_moment_closed_form(a, lambda)), 1e-12);
        const double k2 = mean_power_paper(2, a, lambda);
        EXPECT_LT(rel(k2, second_factorial_moment_closed_form(a, lambda)), 1e-12);
    }
}

TEST(MeanPowerPaper, VacuumFirstMomentDiffersFromExact) {
    // The printed k = 1 form gives a quarter of the squeezed-vacuum photon number.
    const CoherentAmplitudes vac;
    const double paper = mean_power_paper(1, vac, 0.3);
    const double exact = mean_power_exact(1, vac, 0.3);
    EXPECT_NEAR(exact, std::pow(std::sinh(0.6), 2), 1e-14);
    EXPECT_NEAR(paper, exact / 4.0, 1e-12);
    const auto r = pk(2, CoherentAmplitudes(0.2, 0.0, 0.0), 0.3, StatsPath::exact);
    ASSERT_TRUE(r.discrepancy.has_value());
    EXPECT_GT(*r.discrepancy, 0.0);
}

TEST(MeanPowerExact, CoherentLimit) {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 5; ++t) {
        const auto a = random_alpha(rng, 1.0);
        const double n = std::norm(a.sum() / std::sqrt(3.0));
        for (int k = 1; k <= 6; ++k) EXPECT_LT(rel(mean_power_exact(k, a, 0.0), std::pow(n, k)), 1e-12);
    }
}

TEST(MeanPowerExact, SqueezedVacuum) {
    for (double lambda : {0.1, 0.3, 0.8}) {
        const double s = std::sinh(2 * lambda), c = std::cosh(2 * lambda);
        const CoherentAmplitudes vac;
        EXPECT_LT(rel(mean_power_exact(1, vac, lambda), s * s), 1e-13);
        // Wick pairing: <b^dag^2 b^2> = 2 <n>^2 + |<b b>|^2.
        EXPECT_LT(rel(mean_power_exact(2, vac, lambda), 2 * std::pow(s, 4) + s * s * c * c), 1e-13);
        for (int k = 1; k <= 6; ++k)
            EXPECT_LT(rel(mean_power_exact(k, vac, lambda), reference::squeezed_vacuum_factorial_moment(k, 2 * lambda)),
                      1e-10)
                << k;
    }
}

TEST(MeanPowerExact, NormalOrderedAgreesWithSingleModeFock) {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 25; ++t) {
        const double lambda = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
        auto a = random_alpha(rng, 1.0);
        if (std::abs(a.sum() / std::sqrt(3.0)) > 1.5) continue;
        for (int k = 1; k <= 3; ++k) {
            const double x = mean_power_exact(k, a, lambda);
            EXPECT_LT(rel(mean_power_exact_fock(k, a, lambda), x), 1e-8) << t << " " << k;
        }
    }
}

TEST(MeanPowerExact, RejectsOrder) {
    EXPECT_THROW(mean_power_exact(0, CoherentAmplitudes(), 0.2), InvalidParameter);
    EXPECT_THROW(mean_power_exact(7, CoherentAmplitudes(), 0.2), InvalidParameter);
}

TEST(Pk, PoissonianWithoutSqueezing) {
    for (int k = 2; k <= 6; ++k) {
        const auto r = pk(k, CoherentAmplitudes(0.5, Complex(0, 0.2), -0.1), 0.0, StatsPath::exact);
        EXPECT_NEAR(r.value(), 0.0, 1e-12);
        EXPECT_FALSE(r.paper_value.has_value());
    }
}

TEST(Pk, SqueezedVacuumSecondOrder) {
    // 1 + coth^2(2 lambda), i.e. g2 = 3 + 1/<n> for the squeezed vacuum.
    const double lambda = 0.3;
    const auto r = pk(2, CoherentAmplitudes(), lambda, StatsPath::exact);
    const double coth = 1.0 / std::tanh(2 * lambda);
    EXPECT_NEAR(r.value(), 1.0 + coth * coth, 1e-8);
    EXPECT_GT(r.value(), 0.0);
}

TEST(Pk, ZeroMeanPhotonNumberIsDomainError) {
    EXPECT_THROW(pk(2, CoherentAmplitudes(), 0.0, StatsPath::exact), DomainError);
    EXPECT_THROW(pk(1, CoherentAmplitudes(1.0, 0.0, 0.0), 0.2, StatsPath::exact), InvalidParameter);
}

TEST(Pk, PaperPathNegativeNearOrigin) {
    for (double re : {-0.45, -0.2, 0.0, 0.2, 0.45})
        EXPECT_LT(pk(2, CoherentAmplitudes(1.0, 1.0, re), 1.0, StatsPath::paper).value(), 0.0) << re;
}

TEST(Pk, PermutationSymmetry) {
    const std::array<Complex, 3> base{Complex(0.3, 0.1), Complex(-0.2, 0.4), Complex(0.5, 0.0)};
    std::array<int, 3> perm{0, 1, 2};
    const auto ref = pk(3, CoherentAmplitudes(base[0], base[1], base[2]), 0.4, StatsPath::exact);
    do {
        const auto r = pk(3, CoherentAmplitudes(base[perm[0]], base[perm[1]], base[perm[2]]), 0.4, StatsPath::exact);
        EXPECT_LT(rel(*r.exact_value, *ref.exact_value), 1e-12);
        EXPECT_LT(rel(*r.paper_value, *ref.paper_value), 1e-10);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(Pk, ExactPathDependsOnlyOnCollectiveAmplitude) {
    // Two inputs with the same sum give the same statistics.
    const CoherentAmplitudes a(0.3, 0.2, 0.1), b(0.6, 0.0, 0.0);
    for (int k = 1; k <= 4; ++k) EXPECT_LT(rel(mean_power_exact(k, a, 0.35), mean_power_exact(k, b, 0.35)), 1e-13);
    // A common phase matters only through the collective amplitude: e^{i pi} maps abar to -abar,
    // and the moments are even in abar.
    const CoherentAmplitudes flipped(-0.3, -0.2, -0.1);
    for (int k = 1; k <= 4; ++k) EXPECT_LT(rel(mean_power_exact(k, a, 0.35), mean_power_exact(k, flipped, 0.35)), 1e-13);
}

TEST(Fig1Scan, GridShape) {
    const auto rows = fig1_scan(Range(-1.0, 0.05, 1.0), Range(-1.0, 0.05, 1.0));
    ASSERT_EQ(rows.size(), 41u * 41u);
    EXPECT_NEAR(rows.front().re_alpha3, -1.0, 1e-15);
    EXPECT_NEAR(rows.back().re_alpha3, 1.0, 1e-12);
    EXPECT_NEAR(rows[1].im_alpha3, -0.95, 1e-12);
    for (const auto& r : rows) {
        EXPECT_TRUE(std::isfinite(r.p2_paper));
        EXPECT_TRUE(std::isfinite(r.p2_exact));
    }
}
