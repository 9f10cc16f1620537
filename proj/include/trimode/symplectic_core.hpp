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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "trimode/error.hpp"

namespace trimode {

using Matrix3 = Eigen::Matrix3d;
using Vector3 = Eigen::Vector3d;

/// Absolute tolerance used for every 3x3 matrix identity in the library.
inline constexpr double kMatrixTol = 1e-10;

/// Adjacency matrix of the fully connected three-mode coupling: zeros on the
/// diagonal, ones elsewhere. Eigenvalue 2 on (1,1,1), -1 on zero-sum vectors.
inline Matrix3 adjacency_matrix() {
    Matrix3 a;
    a << 0, 1, 1,
         1, 0, 1,
         1, 1, 0;
    return a;
}

/// Symmetric matrix with `diag` on the diagonal and `off` everywhere else.
inline Matrix3 circulant(double diag, double off) {
    Matrix3 m = Matrix3::Constant(off);
    m.diagonal().setConstant(diag);
    return m;
}

inline bool approx_equal(const Matrix3& a, const Matrix3& b, double tol = kMatrixTol) {
    return (a - b).cwiseAbs().maxCoeff() <= tol;
}

/// All diagonal entries equal and all off-diagonal entries equal.
inline bool is_circulant_symmetric(const Matrix3& m, double tol = kMatrixTol) {
    const double d = m(0, 0);
    const double o = m(0, 1);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (std::abs(m(i, j) - (i == j ? d : o)) > tol) return false;
        }
    }
    return true;
}

inline void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) {
        throw InvalidParameter(std::string(name) + " must be finite");
    }
}

/// The matrix family generated by the adjacency matrix A at squeezing
/// strength lambda.
///
///   Lam  = exp(-lambda A) = circulant(u1, v1)
///   Gam  = exp(+lambda A) = circulant(u2, v2)
///   Nmat = (I + Lam^T Lam) / 2
///
/// u and v are the collective-mode combinations e^{-2l} +/- e^{2l}.
/// Immutable after construction.
struct SqueezeMatrices {
    double lambda_param = 0.0;
    Matrix3 A;
    Matrix3 Lam;
    Matrix3 Gam;
    Matrix3 Nmat;
    double u1 = 1.0, v1 = 0.0;
    double u2 = 1.0, v2 = 0.0;
    double u = 2.0, v = 0.0;
};

inline SqueezeMatrices build_squeeze_matrices(double lambda_param) {
    require_finite(lambda_param, "lambda");
    const double em2 = std::exp(-2.0 * lambda_param);
    const double ep2 = std::exp(2.0 * lambda_param);
    const double em1 = std::exp(-lambda_param);
    const double ep1 = std::exp(lambda_param);

    SqueezeMatrices s;
    s.lambda_param = lambda_param;
    s.A = adjacency_matrix();
    s.u1 = (em2 + 2.0 * ep1) / 3.0;
    s.v1 = (em2 - ep1) / 3.0;
    s.u2 = (ep2 + 2.0 * em1) / 3.0;
    s.v2 = (ep2 - em1) / 3.0;
    s.u = em2 + ep2;
    s.v = em2 - ep2;
    s.Lam = circulant(s.u1, s.v1);
    s.Gam = circulant(s.u2, s.v2);
    s.Nmat = 0.5 * (Matrix3::Identity() + s.Lam.transpose() * s.Lam);
    return s;
}

/// Taylor-series matrix exponential with scaling and squaring.
///
/// The input is scaled by 2^-s until its 1-norm is at most 1/2, the series is
/// summed until the 1-norm of the next term drops below `tol`, and the result
/// is squared s times. Works for any dense Eigen matrix type (real or complex).
/// Throws NumericError if the series has not converged after 64 terms.
template <typename Derived>
typename Derived::PlainObject expm_series(const Eigen::MatrixBase<Derived>& m, double tol = 1e-16) {
    using Plain = typename Derived::PlainObject;
    if (!(tol > 0.0)) throw InvalidParameter("expm_series: tol must be positive");
    if (m.rows() != m.cols()) throw InvalidParameter("expm_series: matrix must be square");
    if (!m.allFinite()) throw InvalidParameter("expm_series: matrix has non-finite entries");

    const double norm = m.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Plain scaled = m / std::ldexp(1.0, squarings);

    constexpr int kTermBudget = 64;
    Plain result = Plain::Identity(m.rows(), m.cols());
    Plain term = Plain::Identity(m.rows(), m.cols());
    bool converged = false;
    for (int k = 1; k <= kTermBudget; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        result += term;
        if (term.cwiseAbs().colwise().sum().maxCoeff() < tol) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NumericError("expm_series: Taylor series did not converge");
    for (int i = 0; i < squarings; ++i) result = (result * result).eval();
    return result;
}

/// Physicists' Hermite polynomial H_m(x) by the three-term recurrence
/// H_{m+1} = 2x H_m - 2m H_{m-1}.
template <typename T>
T hermite(int m, T x) {
    if (m < 0) throw InvalidParameter("hermite: order must be non-negative");
    T prev(1);
    if (m == 0) return prev;
    T cur = T(2) * x;
    for (int n = 1; n < m; ++n) {
        T next = T(2) * x * cur - T(2 * n) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// n!! for odd n >= -1, with (-1)!! = 1. Largest n that fits in 64 bits is 33.
inline std::int64_t double_factorial(int n) {
    if (n < -1 || (n % 2 == 0)) {
        throw InvalidParameter("double_factorial: argument must be odd and >= -1");
    }
    if (n > 33) throw InvalidParameter("double_factorial: argument overflows 64 bits");
    std::int64_t r = 1;
    for (int k = n; k > 1; k -= 2) r *= k;
    return r;
}

}  // namespace trimode
