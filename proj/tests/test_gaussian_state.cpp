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

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "trimode/gaussian_state.hpp"
#include "trimode/quadrature.hpp"

using namespace trimode;

namespace {

const double kPi3 = std::pow(std::numbers::pi, 3);

CoherentAmplitudes random_alpha(std::mt19937_64& rng, double scale = 1.5) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
}

}  // namespace

TEST(MakeState, Vacuum) {
    const auto s = make_state(0.0, CoherentAmplitudes());
    EXPECT_LT(s.mean.norm(), 1e-15);
    EXPECT_LT((s.cov - 0.5 * PhaseMatrix::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(MakeState, CoherentDisplacement) {
    const auto s = make_state(0.0, CoherentAmplitudes(1.0, Complex(0, 1), 0.0));
    PhaseVector expected;
    expected << std::sqrt(2.0), 0, 0, 0, std::sqrt(2.0), 0;
    EXPECT_LT((s.mean - expected).norm(), 1e-14);
}

TEST(MakeState, CovarianceIsPureAndSymplectic) {
    std::mt19937_64 rng(7);
    for (double lambda : {-0.4, 0.2, 0.9}) {
        const auto s = make_state(lambda, random_alpha(rng));
        // Pure Gaussian state: det(2 cov) = 1.
        EXPECT_NEAR((2.0 * s.cov).determinant(), 1.0, 1e-10) << lambda;
    }
}

TEST(CentralMoment, SqueezedVariance) {
    for (double lambda : {-0.5, 0.0, 0.2, 1.0}) {
        const auto s = make_state(lambda, CoherentAmplitudes());
        EXPECT_NEAR(central_moment(s, MomentQuery::x3(2)), std::exp(-4 * lambda) / 4, 1e-12);
        EXPECT_NEAR(central_moment(s, MomentQuery::y3(2)), std::exp(4 * lambda) / 4, 1e-12);
    }
}

TEST(CentralMoment, CoherentFourthMoment) {
    const auto s = make_state(0.0, CoherentAmplitudes(0.3, -0.2, Complex(0, 0.4)));
    EXPECT_NEAR(central_moment(s, MomentQuery::x3(4)), 3.0 / 16.0, 1e-14);
}

TEST(CentralMoment, GaussianFourthMomentIsThreeSigmaFourth) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(0.0, 1.0);
    const auto s = make_state(0.35, random_alpha(rng));
    PhaseVector c;
    for (int j = 0; j < 6; ++j) c(j) = n(rng);
    const double var = query_variance(s, MomentQuery(c, 2));
    EXPECT_NEAR(central_moment(s, MomentQuery(c, 4)), 3 * var * var, 1e-12 * var * var);
}

TEST(CentralMoment, RejectsOddOrAboveCap) {
    EXPECT_THROW(MomentQuery::x3(3), InvalidParameter);
    EXPECT_THROW(MomentQuery::x3(0), InvalidParameter);
    EXPECT_THROW(MomentQuery::x3(18), InvalidParameter);
}

TEST(CentralMoment, AlphaIndependence) {
    std::mt19937_64 rng(20260101);
    for (double lambda : {0.1, 0.6}) {
        const auto ref = make_state(lambda, CoherentAmplitudes());
        for (int draw = 0; draw < 20; ++draw) {
            const auto s = make_state(lambda, random_alpha(rng));
            for (int m = 1; m <= 6; ++m) {
                const double r = central_moment(ref, MomentQuery::x3(2 * m));
                EXPECT_NEAR(central_moment(s, MomentQuery::x3(2 * m)), r, 1e-12 * r);
                const double ry = central_moment(ref, MomentQuery::y3(2 * m));
                EXPECT_NEAR(central_moment(s, MomentQuery::y3(2 * m)), ry, 1e-12 * ry);
            }
        }
    }
}

TEST(CentralMoment, TwoEnginesAgree) {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double lambda = std::uniform_real_distribution<double>(-0.8, 0.8)(rng);
        const auto s = make_state(lambda, random_alpha(rng));
        PhaseVector c;
        for (int j = 0; j < 6; ++j) c(j) = n(rng);
        for (int m = 1; m <= 6; ++m) {
            const MomentQuery q(c, 2 * m);
            const double a = central_moment(s, q);
            const double b = central_moment_normal_ordered(s, q);
            EXPECT_NEAR(a, b, 1e-10 * std::abs(a)) << "trial " << trial << " m " << m;
        }
    }
}

TEST(CentralMoment, MatchesPairingEnumeration) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0.0, 1.0);
    const auto s = make_state(0.45, random_alpha(rng));
    PhaseVector c;
    for (int j = 0; j < 6; ++j) c(j) = n(rng);
    for (int m = 1; m <= 4; ++m) {
        const std::vector<Eigen::VectorXd> forms(2 * m, Eigen::VectorXd(c));
        const double ref = reference::isserlis_enumerate(forms, Eigen::MatrixXd(s.cov));
        EXPECT_NEAR(central_moment(s, MomentQuery(c, 2 * m)), ref, 1e-11 * ref) << m;
    }
}

TEST(HigherOrderSqueezing, ClosedForms) {
    EXPECT_NEAR(hos_x(0.25, 2), 3.0 / 16.0 * std::exp(-2.0), 1e-15);
    EXPECT_NEAR(hos_x(0.25, 2), 0.0253754, 1e-7);
    for (int m = 1; m <= 8; ++m) {
        const double coherent = std::pow(0.25, m) * static_cast<double>(double_factorial(2 * m - 1));
        EXPECT_NEAR(hos_x(0.0, m), coherent, 1e-15 * coherent);
        EXPECT_NEAR(hos_y(0.0, m), coherent, 1e-15 * coherent);
    }
    for (double lambda : {-0.7, 0.0, 0.3, 2.0}) EXPECT_NEAR(hos_x(lambda, 1) * hos_y(lambda, 1), 1.0 / 16.0, 1e-15);
}

TEST(HigherOrderSqueezing, AgreesWithEngine) {
    for (double lambda : {0.05, 0.5, 1.0}) {
        const auto s = make_state(lambda, CoherentAmplitudes(0.2, 0.1, -0.3));
        for (int m = 1; m <= 6; ++m) {
            EXPECT_NEAR(central_moment(s, MomentQuery::x3(2 * m)), hos_x(lambda, m), 1e-10 * hos_x(lambda, m));
            EXPECT_NEAR(central_moment(s, MomentQuery::y3(2 * m)), hos_y(lambda, m), 1e-10 * hos_y(lambda, m));
        }
    }
}

TEST(HigherOrderSqueezing, SqueezedBelowCoherentAtAllOrders) {
    for (double lambda : {0.01, 0.3, 1.0})
        for (int m = 1; m <= 6; ++m) EXPECT_LT(hos_x(lambda, m), hos_x(0.0, m));
}

TEST(TwoModeBaseline, Values) {
    const auto z = two_mode_baseline_variance(0.0);
    EXPECT_DOUBLE_EQ(z.x, 0.25);
    EXPECT_DOUBLE_EQ(z.y, 0.25);
    const auto h = two_mode_baseline_variance(0.5);
    EXPECT_NEAR(h.x, std::exp(-1.0) / 4, 1e-15);
    EXPECT_NEAR(h.y, std::exp(1.0) / 4, 1e-15);
    for (double lambda = 0.02; lambda <= 1.0; lambda += 0.02) EXPECT_LT(hos_x(lambda, 1), two_mode_baseline_variance(lambda).x);
}

TEST(Wigner, VacuumPeak) {
    const auto s = make_state(0.0, CoherentAmplitudes());
    EXPECT_NEAR(wigner(s, Vector3::Zero(), Vector3::Zero()), 1.0 / kPi3, 1e-15);
    EXPECT_NEAR(1.0 / kPi3, 0.0322515, 1e-7);
}

TEST(Wigner, PeakAtMean) {
    std::mt19937_64 rng(3);
    for (double lambda : {-0.3, 0.2, 1.0}) {
        const auto s = make_state(lambda, random_alpha(rng));
        const double w = wigner(s, s.mean.head<3>(), s.mean.tail<3>());
        EXPECT_NEAR(w, 1.0 / kPi3, 1e-10 / kPi3);
    }
}

TEST(Wigner, ClosedFormMatchesCovariancePath) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> n(0.0, 0.7);
    for (int trial = 0; trial < 50; ++trial) {
        const double lambda = std::uniform_real_distribution<double>(-0.6, 0.6)(rng);
        const auto s = make_state(lambda, random_alpha(rng, 1.0));
        const Vector3 q(n(rng), n(rng), n(rng)), p(n(rng), n(rng), n(rng));
        const double a = wigner(s, q, p);
        const double b = wigner_covariance(s, q, p);
        EXPECT_NEAR(a, b, 1e-10 * b + 1e-300);
    }
}

TEST(Wigner, Normalization) {
    for (double lambda : {0.0, 0.2, 0.5}) {
        const auto s = make_state(lambda, CoherentAmplitudes(0.3, Complex(0.1, 0.2), -0.2));
        EXPECT_NEAR(wigner_normalization(s), 1.0, 1e-3) << lambda;
    }
}

TEST(Wigner, NormalizationBruteForce6D) {
    const auto s = make_state(0.2, CoherentAmplitudes(0.2, 0.0, Complex(0.0, -0.1)));
    Eigen::Matrix<double, 6, 1> half = 6.0 * s.cov.diagonal().cwiseSqrt();
    const double total = reference::trapezoid_6d(
        [&](const Eigen::Matrix<double, 6, 1>& r) { return wigner(s, r.head<3>(), r.tail<3>()); }, s.mean - half,
        s.mean + half, 13);
    EXPECT_NEAR(total, 1.0, 1e-3);
}

TEST(Wigner, QuadratureMarginal) {
    const double lambda = 0.3;
    const auto s = make_state(lambda, CoherentAmplitudes(0.4, Complex(0.0, 0.3), -0.1));
    const Vector3 qbar = s.mean.head<3>();
    const Matrix3 cq = s.cov.topLeftCorner<3, 3>();
    const Vector3 pbar = s.mean.tail<3>();
    const Vector3 ph = 6.0 * s.cov.diagonal().tail<3>().cwiseSqrt();
    EXPECT_LT((qbar - s.mats.Lam * s.alpha.quadrature_q()).norm(), 1e-14);
    EXPECT_LT((cq - 0.5 * s.mats.Lam * s.mats.Lam.transpose()).cwiseAbs().maxCoeff(), 1e-14);
    for (const Vector3& q : {qbar, Vector3(qbar + Vector3(0.2, -0.1, 0.05)), Vector3(qbar - Vector3(0.1, 0.3, 0.0))}) {
        const double marginal = trapezoid_3d([&](const Vector3& p) { return wigner(s, q, p); }, pbar - ph, pbar + ph, 41);
        const Vector3 d = q - qbar;
        const double gauss = std::exp(-0.5 * d.dot(cq.inverse() * d)) / std::sqrt(std::pow(2 * std::numbers::pi, 3) * cq.determinant());
        EXPECT_NEAR(marginal, gauss, 1e-3 * gauss);
    }
}

TEST(Wigner, ParityIsPi3W) {
    const auto s = make_state(0.25, CoherentAmplitudes(0.1, 0.2, 0.3));
    const std::array<Complex, 3> beta{Complex(0.1, -0.2), Complex(0.0, 0.3), Complex(-0.15, 0.0)};
    const auto [q, p] = phase_point(beta);
    EXPECT_NEAR(q(0), std::sqrt(2.0) * 0.1, 1e-15);
    EXPECT_NEAR(p(0), -std::sqrt(2.0) * 0.2, 1e-15);
    EXPECT_NEAR(parity_expectation(s, beta), kPi3 * wigner(s, q, p), 1e-15);
}

TEST(NormalOrder, IdentityAtZero) {
    const auto f = normal_order_coefficients(0.0);
    EXPECT_NEAR(f.prefactor, 1.0, 1e-15);
    EXPECT_LT(f.pair_matrix.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(NormalOrder, PrefactorFromDeterminants) {
    for (double lambda : {0.1, 0.2, 0.7}) {
        const auto m = build_squeeze_matrices(lambda);
        const auto f = normal_order_coefficients(lambda);
        EXPECT_NEAR(f.prefactor, std::sqrt(m.Lam.determinant() / m.Nmat.determinant()), 1e-14);
        EXPECT_TRUE(approx_equal(f.pair_matrix, f.pair_matrix.transpose(), 1e-14));
    }
}
