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

// Displaced-parity Bell combination B(3) for S3|alpha>:
//
//   B(3) = pi^3 [W(b1, b2, b3') + W(b1, b2', b3) + W(b1', b2, b3) - W(b1', b2', b3')]
//
// Each pi^3 W is the expectation of a product of displaced parity operators and
// lies in (0, 1] for this Gaussian state; local realism bounds |B(3)| by 2.

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>
#include <gsl/gsl_multimin.h>

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "trimode/error.hpp"
#include "trimode/fock_oracle.hpp"
#include "trimode/gaussian_state.hpp"
#include "trimode/grid.hpp"

namespace trimode {

using Displacements = std::array<Complex, 3>;

struct BellSetting {
    Displacements beta{};
    Displacements beta_prime{};
};

/// The four displacement triples entering B(3), with their signs.
inline std::array<Displacements, 4> bell_points(const BellSetting& s) {
    return {{
        {s.beta[0], s.beta[1], s.beta_prime[2]},
        {s.beta[0], s.beta_prime[1], s.beta[2]},
        {s.beta_prime[0], s.beta[1], s.beta[2]},
        {s.beta_prime[0], s.beta_prime[1], s.beta_prime[2]},
    }};
}

inline constexpr std::array<double, 4> kBellSigns = {1.0, 1.0, 1.0, -1.0};

/// Displacement pattern of the b-scan: beta1 = beta2 = beta3' = 0, beta3 = -b,
/// beta1' = beta2' = b, with coherent amplitudes (0.4, 0.5, 0.6).
struct Fig2Config {
    static CoherentAmplitudes alpha() { return {0.4, 0.5, 0.6}; }

    static BellSetting setting(double b) {
        if (!(b > 0.0) || !std::isfinite(b)) throw InvalidParameter("b must be positive and finite");
        BellSetting s;
        s.beta = {Complex(0.0), Complex(0.0), Complex(-b)};
        s.beta_prime = {Complex(b), Complex(b), Complex(0.0)};
        return s;
    }
};

inline void require_finite(const BellSetting& s) {
    for (const auto* set : {&s.beta, &s.beta_prime}) {
        for (const auto& z : *set) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw InvalidParameter("Bell displacements must be finite");
            }
        }
    }
}

/// B(3) from the analytic Wigner function.
inline double b3(const GaussianState& state, const BellSetting& setting) {
    require_finite(setting);
    const auto points = bell_points(setting);
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) total += kBellSigns[i] * parity_expectation(state, points[i]);
    return total;
}

struct Fig2Row {
    double lambda = 0.0;
    double b_star = 0.0;
    double b3_max = 0.0;
};

namespace detail {

struct BScanContext {
    const GaussianState* state;
};

inline double negative_b3_of_b(double b, void* params) {
    const auto* ctx = static_cast<const BScanContext*>(params);
    return -b3(*ctx->state, Fig2Config::setting(b));
}

// GSL reports failures through return codes here; its default handler aborts.
inline void silence_gsl_errors() {
    static const gsl_error_handler_t* previous = gsl_set_error_handler_off();
    (void)previous;
}

}  // namespace detail

/// Maximises B(3) over b for one state: grid bracketing (ties go to the
/// smaller b), then golden-section refinement inside the bracketing cell.
inline Fig2Row maximize_over_b(const GaussianState& state, const Range& b_range) {
    const auto bs = b_range.values();
    if (bs.empty()) throw InvalidParameter("b range is empty");
    if (!(bs.front() > 0.0)) throw InvalidParameter("b range must be strictly positive");

    std::vector<double> values;
    values.reserve(bs.size());
    for (double b : bs) values.push_back(b3(state, Fig2Config::setting(b)));
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }

    Fig2Row row{state.lambda_param, bs[best], values[best]};
    if (best == 0 || best + 1 == bs.size()) return row;
    if (!(values[best] > values[best - 1] && values[best] > values[best + 1])) return row;

    detail::silence_gsl_errors();
    detail::BScanContext ctx{&state};
    gsl_function fn{&detail::negative_b3_of_b, &ctx};
    gsl_min_fminimizer* minimizer = gsl_min_fminimizer_alloc(gsl_min_fminimizer_goldensection);
    if (gsl_min_fminimizer_set(minimizer, &fn, bs[best], bs[best - 1], bs[best + 1]) == GSL_SUCCESS) {
        for (int iter = 0; iter < 200; ++iter) {
            if (gsl_min_fminimizer_iterate(minimizer) != GSL_SUCCESS) break;
            const double lo = gsl_min_fminimizer_x_lower(minimizer);
            const double hi = gsl_min_fminimizer_x_upper(minimizer);
            if (gsl_min_test_interval(lo, hi, 1e-10, 0.0) == GSL_SUCCESS) break;
        }
        const double b = gsl_min_fminimizer_x_minimum(minimizer);
        const double value = -gsl_min_fminimizer_f_minimum(minimizer);
        if (value > row.b3_max) {
            row.b_star = b;
            row.b3_max = value;
        }
    }
    gsl_min_fminimizer_free(minimizer);
    return row;
}

/// One row per lambda: the maximising b and max_b B(3).
inline std::vector<Fig2Row> fig2_scan(const Range& lambda_range, const Range& b_range,
                                      const CoherentAmplitudes& alpha = Fig2Config::alpha()) {
    const auto lambdas = lambda_range.values();
    if (lambdas.empty()) throw InvalidParameter("lambda range is empty");
    std::vector<Fig2Row> rows;
    rows.reserve(lambdas.size());
    for (double lambda : lambdas) rows.push_back(maximize_over_b(make_state(lambda, alpha), b_range));
    return rows;
}

struct OracleComparison {
    double analytic = 0.0;
    double oracle = 0.0;
    double difference() const { return std::abs(analytic - oracle); }
};

/// Largest squeezing at which the Fock oracle is trusted at the default cutoff.
inline constexpr double kOracleLambdaMax = 0.3;

/// B(3) from the Wigner function and from displaced parity measured on S3|alpha>
/// in a truncated Fock space.
inline OracleComparison b3_oracle_check(double lambda_param, const CoherentAmplitudes& alpha,
                                        const BellSetting& setting, int cutoff = kDefaultCutoff) {
    if (std::abs(lambda_param) > kOracleLambdaMax) {
        throw InvalidParameter("b3_oracle_check: |lambda| must be <= 0.3");
    }
    require_finite(setting);
    const FockArena arena(cutoff);
    const KetVector ket = s3_unitary(arena, lambda_param).apply(coherent_ket(arena, alpha));
    OracleComparison out;
    out.analytic = b3(make_state(lambda_param, alpha), setting);
    const auto points = bell_points(setting);
    for (std::size_t i = 0; i < points.size(); ++i) {
        out.oracle += kBellSigns[i] * displaced_parity(arena, ket, points[i]);
    }
    return out;
}

struct GlobalSearchResult {
    BellSetting setting;
    double b3 = 0.0;
    int iterations = 0;
    bool converged = false;
};

namespace detail {

inline BellSetting unpack_setting(const gsl_vector* x) {
    BellSetting s;
    for (std::size_t j = 0; j < 3; ++j) {
        s.beta[j] = Complex(gsl_vector_get(x, 2 * j), gsl_vector_get(x, 2 * j + 1));
        s.beta_prime[j] = Complex(gsl_vector_get(x, 6 + 2 * j), gsl_vector_get(x, 7 + 2 * j));
    }
    return s;
}

inline double negative_b3_of_setting(const gsl_vector* x, void* params) {
    const auto* state = static_cast<const GaussianState*>(params);
    return -b3(*state, unpack_setting(x));
}

}  // namespace detail

/// Heuristic local search of B(3) over all twelve real displacement components
/// for a fixed state (Nelder-Mead simplex). A local optimum only; no global
/// guarantee.
inline GlobalSearchResult global_search_heuristic(const GaussianState& state, const BellSetting& seed,
                                                  int max_iterations = 5000, double initial_step = 0.1) {
    require_finite(seed);
    detail::silence_gsl_errors();
    constexpr std::size_t kDim = 12;
    gsl_vector* x = gsl_vector_alloc(kDim);
    gsl_vector* step = gsl_vector_alloc(kDim);
    for (std::size_t j = 0; j < 3; ++j) {
        gsl_vector_set(x, 2 * j, seed.beta[j].real());
        gsl_vector_set(x, 2 * j + 1, seed.beta[j].imag());
        gsl_vector_set(x, 6 + 2 * j, seed.beta_prime[j].real());
        gsl_vector_set(x, 7 + 2 * j, seed.beta_prime[j].imag());
    }
    gsl_vector_set_all(step, initial_step);

    gsl_multimin_function fn{&detail::negative_b3_of_setting, kDim, const_cast<GaussianState*>(&state)};
    gsl_multimin_fminimizer* nm = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, kDim);
    gsl_multimin_fminimizer_set(nm, &fn, x, step);

    GlobalSearchResult result;
    for (int iter = 1; iter <= max_iterations; ++iter) {
        result.iterations = iter;
        if (gsl_multimin_fminimizer_iterate(nm) != GSL_SUCCESS) break;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(nm), 1e-9) == GSL_SUCCESS) {
            result.converged = true;
            break;
        }
    }
    result.setting = detail::unpack_setting(gsl_multimin_fminimizer_x(nm));
    result.b3 = -gsl_multimin_fminimizer_minimum(nm);
    gsl_multimin_fminimizer_free(nm);
    gsl_vector_free(step);
    gsl_vector_free(x);
    return result;
}

}  // namespace trimode
