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

// Exact phase-space description of the squeezed coherent state S3|alpha>.
//
// Conventions: hbar = 1, [Q, P] = i, a = (Q + iP)/sqrt(2). Phase-space vectors
// are ordered (q1, q2, q3, p1, p2, p3). S3 acts in the Heisenberg picture as
// Q -> Lam Q and P -> Gam P, so the state is Gaussian with
//
//   mean = (Lam sqrt(2) Re alpha, Gam sqrt(2) Im alpha)
//   cov  = diag(Lam Lam^T / 2, Gam Gam^T / 2).

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "trimode/error.hpp"
#include "trimode/symplectic_core.hpp"

namespace trimode {

using Complex = std::complex<double>;
using PhaseVector = Eigen::Matrix<double, 6, 1>;
using PhaseMatrix = Eigen::Matrix<double, 6, 6>;

/// Coherent amplitudes (alpha1, alpha2, alpha3) of the unsqueezed product state.
struct CoherentAmplitudes {
    std::array<Complex, 3> alpha{};

    CoherentAmplitudes() = default;
    CoherentAmplitudes(Complex a1, Complex a2, Complex a3) : alpha{a1, a2, a3} {
        for (const auto& a : alpha) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw InvalidParameter("coherent amplitudes must be finite");
            }
        }
    }

    const Complex& operator[](int j) const { return alpha[static_cast<std::size_t>(j)]; }
    Complex sum() const { return alpha[0] + alpha[1] + alpha[2]; }
    Vector3 quadrature_q() const {
        return std::sqrt(2.0) * Vector3(alpha[0].real(), alpha[1].real(), alpha[2].real());
    }
    Vector3 quadrature_p() const {
        return std::sqrt(2.0) * Vector3(alpha[0].imag(), alpha[1].imag(), alpha[2].imag());
    }
};

struct GaussianState {
    double lambda_param = 0.0;
    CoherentAmplitudes alpha;
    SqueezeMatrices mats;
    PhaseVector mean = PhaseVector::Zero();
    PhaseMatrix cov = PhaseMatrix::Identity() * 0.5;
};

inline GaussianState make_state(double lambda_param, const CoherentAmplitudes& alpha) {
    GaussianState s;
    s.lambda_param = lambda_param;
    s.alpha = alpha;
    s.mats = build_squeeze_matrices(lambda_param);
    s.mean.head<3>() = s.mats.Lam * alpha.quadrature_q();
    s.mean.tail<3>() = s.mats.Gam * alpha.quadrature_p();
    s.cov.setZero();
    s.cov.topLeftCorner<3, 3>() = 0.5 * s.mats.Lam * s.mats.Lam.transpose();
    s.cov.bottomRightCorner<3, 3>() = 0.5 * s.mats.Gam * s.mats.Gam.transpose();
    return s;
}

/// Largest supported moment order 2m. (2m-1)!! sigma^{2m} stays well inside
/// double range up to here.
inline constexpr int kMaxMomentOrder = 16;

/// Scalar observable c . (Q1, Q2, Q3, P1, P2, P3) together with an even
/// moment order 2 <= 2m <= 16.
class MomentQuery {
   public:
    MomentQuery(const PhaseVector& coeffs, int order) : coeffs_(coeffs), order_(order) {
        if (order < 2 || order % 2 != 0) {
            throw InvalidParameter("moment order must be even and >= 2");
        }
        if (order > kMaxMomentOrder) {
            throw InvalidParameter("moment order above the supported cap of 16");
        }
        if (!coeffs.allFinite()) throw InvalidParameter("moment coefficients must be finite");
    }

    /// X3 = (Q1 + Q2 + Q3)/sqrt(6).
    static MomentQuery x3(int order) {
        PhaseVector c = PhaseVector::Zero();
        c.head<3>().setConstant(1.0 / std::sqrt(6.0));
        return {c, order};
    }

    /// Y3 = (P1 + P2 + P3)/sqrt(6).
    static MomentQuery y3(int order) {
        PhaseVector c = PhaseVector::Zero();
        c.tail<3>().setConstant(1.0 / std::sqrt(6.0));
        return {c, order};
    }

    const PhaseVector& coeffs() const { return coeffs_; }
    int order() const { return order_; }
    int half_order() const { return order_ / 2; }

   private:
    PhaseVector coeffs_;
    int order_;
};

/// Variance c^T cov c of the query observable.
inline double query_variance(const GaussianState& state, const MomentQuery& query) {
    return query.coeffs().dot(state.cov * query.coeffs());
}

/// 2m-th central moment by the Isserlis law (2m-1)!! sigma^{2m}.
inline double central_moment(const GaussianState& state, const MomentQuery& query) {
    const int m = query.half_order();
    const double var = query_variance(state, query);
    return static_cast<double>(double_factorial(2 * m - 1)) * std::pow(var, m);
}

/// 2m-th central moment through the normal-ordering expansion
///
///   (dF)^{2m} = sum_k (2m)! / ((2m-2k)! k!) (sum_j eta_j kappa_j / 2)^k :(dF)^{2m-2k}:
///
/// with F written as sum_j (eta_j a_j + kappa_j a_j^dag) after the Heisenberg
/// map, and each normally ordered term evaluated in the coherent state |alpha>
/// (where a -> alpha). Independent of the covariance matrix.
inline double central_moment_normal_ordered(const GaussianState& state, const MomentQuery& query) {
    const auto& c = query.coeffs();
    // Heisenberg-transformed coefficients on Q_j and P_j.
    const Vector3 x = state.mats.Lam.transpose() * c.head<3>();
    const Vector3 y = state.mats.Gam.transpose() * c.tail<3>();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    Complex contraction{0.0, 0.0};
    Complex symbol{0.0, 0.0};
    for (int j = 0; j < 3; ++j) {
        const Complex eta = Complex(x(j), -y(j)) * inv_sqrt2;
        const Complex kappa = Complex(x(j), y(j)) * inv_sqrt2;
        contraction += eta * kappa;
        symbol += eta * state.alpha[j] + kappa * std::conj(state.alpha[j]);
    }
    // Coherent-state normal-ordered symbol of dF = F - <F>, with <F> from the mean vector.
    const Complex shifted = symbol - c.dot(state.mean);

    const int m = query.half_order();
    Complex total{0.0, 0.0};
    for (int k = 0; k <= m; ++k) {
        const double comb = std::tgamma(2.0 * m + 1.0) /
                            (std::tgamma(2.0 * m - 2.0 * k + 1.0) * std::tgamma(k + 1.0));
        const int power = 2 * m - 2 * k;
        const Complex normal = power == 0 ? Complex(1.0) : std::pow(shifted, power);
        total += comb * std::pow(contraction / 2.0, k) * normal;
    }
    return total.real();
}

/// <(dX3)^{2m}> = (1/4)^m (2m-1)!! e^{-4 m lambda}; independent of alpha.
inline double hos_x(double lambda_param, int m) {
    if (m < 1) throw InvalidParameter("hos_x: m must be >= 1");
    require_finite(lambda_param, "lambda");
    return std::pow(0.25, m) * static_cast<double>(double_factorial(2 * m - 1)) *
           std::exp(-4.0 * m * lambda_param);
}

/// <(dY3)^{2m}> = (1/4)^m (2m-1)!! e^{+4 m lambda}.
inline double hos_y(double lambda_param, int m) {
    if (m < 1) throw InvalidParameter("hos_y: m must be >= 1");
    require_finite(lambda_param, "lambda");
    return std::pow(0.25, m) * static_cast<double>(double_factorial(2 * m - 1)) *
           std::exp(4.0 * m * lambda_param);
}

struct QuadraturePair {
    double x = 0.0;
    double y = 0.0;
};

/// Variances (e^{-2 lambda}/4, e^{2 lambda}/4) of the two-mode squeezed vacuum,
/// the benchmark the three-mode e^{-4 lambda} law is compared against.
inline QuadraturePair two_mode_baseline_variance(double lambda_param) {
    require_finite(lambda_param, "lambda");
    return {std::exp(-2.0 * lambda_param) / 4.0, std::exp(2.0 * lambda_param) / 4.0};
}

namespace detail {

// -|M x - t|^2 for a circulant M = circulant(d, o), expanded in scalar form.
inline double circulant_gaussian_exponent(double d, double o, const Vector3& x, const Vector3& t) {
    const double diag2 = d * d + 2.0 * o * o;
    const double off2 = 2.0 * d * o + o * o;
    double e = 0.0;
    for (int j = 0; j < 3; ++j) {
        e += diag2 * x(j) * x(j) + t(j) * t(j) - 2.0 * d * x(j) * t(j);
    }
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < j; ++k) {
            e += 2.0 * (off2 * x(j) * x(k) - o * (x(j) * t(k) + x(k) * t(j)));
        }
    }
    return -e;
}

}  // namespace detail

/// Wigner function of S3|alpha> at (q, p), in the closed scalar form
///
///   W = pi^-3 exp[-|Gam q - sigma|^2 - |Lam p - chi|^2]
///
/// with sigma = sqrt(2) Re alpha and chi = sqrt(2) Im alpha, each square
/// expanded with the circulant entries (u2, v2) and (u1, v1).
inline double wigner(const GaussianState& state, const Vector3& q, const Vector3& p) {
    if (!q.allFinite() || !p.allFinite()) throw InvalidParameter("wigner: non-finite phase point");
    const auto& mt = state.mats;
    const double e = detail::circulant_gaussian_exponent(mt.u2, mt.v2, q, state.alpha.quadrature_q()) +
                     detail::circulant_gaussian_exponent(mt.u1, mt.v1, p, state.alpha.quadrature_p());
    return std::exp(e) / std::pow(std::numbers::pi, 3);
}

/// Generic Gaussian Wigner function built only from mean and covariance:
/// W = exp(-d^T cov^{-1} d / 2) / ((2 pi)^3 sqrt(det cov)).
inline double wigner_covariance(const GaussianState& state, const Vector3& q, const Vector3& p) {
    PhaseVector r;
    r << q, p;
    const PhaseVector d = r - state.mean;
    Eigen::LDLT<PhaseMatrix> ldlt(state.cov);
    const double quad = d.dot(ldlt.solve(d));
    const double norm = std::pow(2.0 * std::numbers::pi, 3) * std::sqrt(state.cov.determinant());
    return std::exp(-0.5 * quad) / norm;
}

/// Phase-space point of a displacement beta = (q + i p)/sqrt(2).
inline std::pair<Vector3, Vector3> phase_point(const std::array<Complex, 3>& beta) {
    Vector3 q, p;
    for (int j = 0; j < 3; ++j) {
        q(j) = std::sqrt(2.0) * beta[static_cast<std::size_t>(j)].real();
        p(j) = std::sqrt(2.0) * beta[static_cast<std::size_t>(j)].imag();
    }
    return {q, p};
}

/// pi^3 W at the phase point of beta; equals the displaced-parity expectation.
inline double parity_expectation(const GaussianState& state, const std::array<Complex, 3>& beta) {
    const auto [q, p] = phase_point(beta);
    return std::pow(std::numbers::pi, 3) * wigner(state, q, p);
}

struct NormalOrderForm {
    double prefactor = 1.0;
    Matrix3 pair_matrix = Matrix3::Zero();
};

/// Vacuum amplitude (det Lam / det N)^{1/2} and the pair-creation matrix
/// Lam N^{-1} Lam^T - I of S3|000> = prefactor exp(a^dag Z a^dag / 2)|000>.
inline NormalOrderForm normal_order_coefficients(double lambda_param) {
    const auto mt = build_squeeze_matrices(lambda_param);
    Eigen::FullPivLU<Matrix3> lu(mt.Nmat);
    if (!lu.isInvertible()) throw NumericError("normal_order_coefficients: N is singular");
    NormalOrderForm f;
    f.prefactor = std::sqrt(mt.Lam.determinant() / mt.Nmat.determinant());
    f.pair_matrix = mt.Lam * lu.inverse() * mt.Lam.transpose() - Matrix3::Identity();
    return f;
}

}  // namespace trimode
