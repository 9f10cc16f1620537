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

#include <cmath>
#include <functional>
#include <numbers>

#include "trimode/error.hpp"
#include "trimode/gaussian_state.hpp"
#include "trimode/symplectic_core.hpp"

namespace trimode {

/// Tensor-product trapezoid rule over the box [lo, hi] with `points` nodes per axis.
inline double trapezoid_3d(const std::function<double(const Vector3&)>& f, const Vector3& lo, const Vector3& hi,
                           int points) {
    if (points < 2) throw InvalidParameter("trapezoid_3d needs at least two points per axis");
    const Vector3 h = (hi - lo) / (points - 1);
    auto weight = [points](int i) { return (i == 0 || i == points - 1) ? 0.5 : 1.0; };
    double total = 0.0;
    Vector3 x;
    for (int i = 0; i < points; ++i) {
        x(0) = lo(0) + i * h(0);
        for (int j = 0; j < points; ++j) {
            x(1) = lo(1) + j * h(1);
            for (int k = 0; k < points; ++k) {
                x(2) = lo(2) + k * h(2);
                total += weight(i) * weight(j) * weight(k) * f(x);
            }
        }
    }
    return total * h.prod();
}

/// Integral of the Wigner function over a box of +/- box_sigmas standard
/// deviations about the mean on every axis (tensor trapezoid, `points` nodes
/// per axis). The q and p blocks are summed separately using
/// W(q, p) = pi^3 W(q, pbar) W(qbar, p), exact when cov has no q-p block.
inline double wigner_normalization(const GaussianState& state, int points = 41, double box_sigmas = 6.0) {
    if (state.cov.topRightCorner<3, 3>().cwiseAbs().maxCoeff() != 0.0) {
        throw InvalidParameter("wigner_normalization: covariance has a q-p cross block");
    }
    const Vector3 qbar = state.mean.head<3>();
    const Vector3 pbar = state.mean.tail<3>();
    const Vector3 q_half = box_sigmas * state.cov.diagonal().head<3>().cwiseSqrt();
    const Vector3 p_half = box_sigmas * state.cov.diagonal().tail<3>().cwiseSqrt();
    const double peak = wigner(state, qbar, pbar);
    const double q_part = trapezoid_3d([&](const Vector3& q) { return wigner(state, q, pbar); }, qbar - q_half,
                                       qbar + q_half, points);
    const double p_part = trapezoid_3d([&](const Vector3& p) { return wigner(state, qbar, p); }, pbar - p_half,
                                       pbar + p_half, points);
    return q_part * p_part / peak;
}

}  // namespace trimode
