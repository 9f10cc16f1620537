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

// Higher-order photon statistics of the collective mode A = (a1 + a2 + a3)/sqrt(3).
//
// Two independent evaluations of <A^dag^k A^k> in S3|alpha>:
//
//  * the Hermite-polynomial closed form in G and M ("paper" path), evaluated
//    verbatim together with its k = 1, 2 specialisations;
//  * the exact single-mode reduction ("exact" path). S3 maps A to
//    cosh(2l) A - sinh(2l) A^dag and |alpha> restricted to A is the coherent
//    state |abar>, abar = (alpha1 + alpha2 + alpha3)/sqrt(3).
//
// The two paths do not agree in general; PkResult carries both.

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trimode/error.hpp"
#include "trimode/gaussian_state.hpp"
#include "trimode/grid.hpp"
#include "trimode/symplectic_core.hpp"

namespace trimode {

inline constexpr int kMaxFactorialMomentOrder = 6;

struct CollectiveMode {
    Complex collective_alpha{0.0, 0.0};
    double effective_squeeze = 0.0;  // r = 2 lambda
};

inline CollectiveMode collective_mode(const CoherentAmplitudes& alpha, double lambda_param) {
    require_finite(lambda_param, "lambda");
    return {alpha.sum() / std::sqrt(3.0), 2.0 * lambda_param};
}

struct GMPair {
    Complex G{0.0, 0.0};
    Complex M{0.0, 0.0};
};

namespace detail {

struct CollectiveRatios {
    double u = 0.0;
    double v = 0.0;
    Complex root_uv;  // sqrt(2u / 3v), principal branch
    Complex root_vu;  // sqrt(2v / 3u) := (2/3) / root_uv
};

inline CollectiveRatios collective_ratios(double lambda_param) {
    require_finite(lambda_param, "lambda");
    if (lambda_param == 0.0) {
        throw SingularParameter("u/v ratios are singular at lambda = 0; use the exact path");
    }
    CollectiveRatios r;
    r.u = std::exp(-2.0 * lambda_param) + std::exp(2.0 * lambda_param);
    r.v = std::exp(-2.0 * lambda_param) - std::exp(2.0 * lambda_param);
    r.root_uv = std::sqrt(Complex(2.0 * r.u / (3.0 * r.v), 0.0));
    // Reciprocal branch: keeps sqrt(u/v) sqrt(v/u) = 1, which the printed
    // G M and G^2, M^2 expansions rely on.
    r.root_vu = (2.0 / 3.0) / r.root_uv;
    return r;
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace detail

/// G = i sum_j (sqrt(2u/3v) alpha_j^* - sqrt(2v/3u) alpha_j),
/// M = i sum_j (sqrt(2u/3v) alpha_j - sqrt(2v/3u) alpha_j^*).
/// Throws SingularParameter at lambda = 0.
inline GMPair gm_pair(const CoherentAmplitudes& alpha, double lambda_param) {
    const auto r = detail::collective_ratios(lambda_param);
    const Complex i(0.0, 1.0);
    const Complex s = alpha.sum();
    return {i * (r.root_uv * std::conj(s) - r.root_vu * s), i * (r.root_uv * s - r.root_vu * std::conj(s))};
}

/// Closed form of the product G M written directly in the amplitudes:
/// (2/3) sum_jk (a_k^* a_j^* + a_k a_j) - (4/3) coth(-4l) sum_jk a_j^* a_k.
inline Complex gm_product_closed_form(const CoherentAmplitudes& alpha, double lambda_param) {
    require_finite(lambda_param, "lambda");
    if (lambda_param == 0.0) throw SingularParameter("coth(-4 lambda) is singular at lambda = 0");
    const Complex s = alpha.sum();
    const Complex sc = std::conj(s);
    const double coth = 1.0 / std::tanh(-4.0 * lambda_param);
    return (2.0 / 3.0) * (sc * sc + s * s) - (4.0 / 3.0) * coth * (sc * s);
}

/// Closed forms of G^2 and M^2 in the amplitudes.
inline std::pair<Complex, Complex> gm_squares_closed_form(const CoherentAmplitudes& alpha,
                                                          double lambda_param) {
    require_finite(lambda_param, "lambda");
    if (lambda_param == 0.0) throw SingularParameter("coth(-2 lambda) is singular at lambda = 0");
    const Complex s = alpha.sum();
    const Complex sc = std::conj(s);
    const double th = std::tanh(-2.0 * lambda_param);
    const double cth = 1.0 / th;
    const Complex mod = (4.0 / 3.0) * (sc * s);
    return {mod - (2.0 / 3.0) * (s * s * th + sc * sc * cth), mod - (2.0 / 3.0) * (s * s * cth + sc * sc * th)};
}

/// Hermite-series closed form of <A^dag^k A^k> as a complex number, before the
/// reality check:
///
///   (-uv)^k / 2^k sum_{n=0}^{k} (-2v)^n (k!)^2 / (2^{4n} u^n ((k-n)!)^2 n!)
///                               H_{k-n}(G/2) H_{k-n}(M/2)
inline Complex mean_power_paper_complex(int k, const CoherentAmplitudes& alpha, double lambda_param) {
    if (k < 1 || k > kMaxFactorialMomentOrder) throw InvalidParameter("k must be in [1, 6]");
    const auto r = detail::collective_ratios(lambda_param);
    const auto gm = gm_pair(alpha, lambda_param);
    Complex sum{0.0, 0.0};
    for (int n = 0; n <= k; ++n) {
        const double kf = detail::factorial(k);
        const double knf = detail::factorial(k - n);
        const double coeff = std::pow(-2.0 * r.v, n) * kf * kf /
                             (std::pow(2.0, 4 * n) * std::pow(r.u, n) * knf * knf * detail::factorial(n));
        sum += coeff * hermite(k - n, gm.G / 2.0) * hermite(k - n, gm.M / 2.0);
    }
    return std::pow(-r.u * r.v, k) / std::pow(2.0, k) * sum;
}

/// Imaginary parts up to this size (relative to max(1, |Re|)) are treated as
/// rounding and dropped.
inline constexpr double kImaginaryResidueTol = 1e-9;

inline double real_or_throw(Complex value, const char* what) {
    const double scale = std::max(1.0, std::abs(value.real()));
    const double residue = std::abs(value.imag()) / scale;
    if (residue > kImaginaryResidueTol) {
        throw FormulaInconsistency(std::string(what) + ": imaginary residue above tolerance", residue);
    }
    return value.real();
}

/// Hermite-series closed form of <A^dag^k A^k>, 1 <= k <= 6, lambda != 0.
inline double mean_power_paper(int k, const CoherentAmplitudes& alpha, double lambda_param) {
    return real_or_throw(mean_power_paper_complex(k, alpha, lambda_param), "mean_power_paper");
}

/// k = 1 specialisation: [G M - tanh(-2l)/8] sinh(4l), with G M in closed form.
inline double first_factorial_moment_closed_form(const CoherentAmplitudes& alpha, double lambda_param) {
    const Complex gm = gm_product_closed_form(alpha, lambda_param);
    return real_or_throw((gm - std::tanh(-2.0 * lambda_param) / 8.0) * std::sinh(4.0 * lambda_param),
                         "first_factorial_moment_closed_form");
}

/// k = 2 specialisation in Hermite form,
/// (uv)^2/4 [v^2/(32 u^2) - (v/2u) H1(G/2) H1(M/2) + H2(G/2) H2(M/2)],
/// with G M, G^2, M^2 taken from their closed forms.
inline double second_factorial_moment_closed_form(const CoherentAmplitudes& alpha, double lambda_param) {
    const auto r = detail::collective_ratios(lambda_param);
    const Complex gm = gm_product_closed_form(alpha, lambda_param);
    const auto [g2, m2] = gm_squares_closed_form(alpha, lambda_param);
    const double vu = r.v / r.u;
    const Complex bracket = vu * vu / 32.0 - 0.5 * vu * gm + (g2 - 2.0) * (m2 - 2.0);
    return real_or_throw((r.u * r.v) * (r.u * r.v) / 4.0 * bracket, "second_factorial_moment_closed_form");
}

/// k = 2 specialisation in its simplified hyperbolic form,
/// sinh^2(-4l) [2^-5 tanh^2(-2l) + 2 G M tanh(2l) + (G^2 - 2)(M^2 - 2)].
/// Its middle coefficient differs from the Hermite form by a factor of 4; kept
/// for the errata report.
inline double second_factorial_moment_simplified(const CoherentAmplitudes& alpha, double lambda_param) {
    const Complex gm = gm_product_closed_form(alpha, lambda_param);
    const auto [g2, m2] = gm_squares_closed_form(alpha, lambda_param);
    const double th = std::tanh(-2.0 * lambda_param);
    const double sh = std::sinh(-4.0 * lambda_param);
    const Complex bracket =
        std::pow(2.0, -5) * th * th + 2.0 * gm * std::tanh(2.0 * lambda_param) + (g2 - 2.0) * (m2 - 2.0);
    return real_or_throw(sh * sh * bracket, "second_factorial_moment_simplified");
}

namespace detail {

// Polynomial in (A^dag, A) kept in normal order: key (p, q) is A^dag^p A^q.
class NormalOrderedPolynomial {
   public:
    using Key = std::pair<int, int>;

    NormalOrderedPolynomial() = default;
    explicit NormalOrderedPolynomial(std::map<Key, Complex> terms) : terms_(std::move(terms)) {}

    static NormalOrderedPolynomial identity() { return NormalOrderedPolynomial(std::map<Key, Complex>{{{0, 0}, Complex(1.0)}}); }

    // A^dag^a A^b A^dag^c A^d = sum_j C(b,j) C(c,j) j! A^dag^{a+c-j} A^{b+d-j}.
    friend NormalOrderedPolynomial operator*(const NormalOrderedPolynomial& x, const NormalOrderedPolynomial& y) {
        std::map<Key, Complex> out;
        for (const auto& [kx, cx] : x.terms_) {
            for (const auto& [ky, cy] : y.terms_) {
                const auto [a, b] = kx;
                const auto [c, d] = ky;
                for (int j = 0; j <= std::min(b, c); ++j) {
                    const double w = binomial(b, j) * binomial(c, j) * factorial(j);
                    out[{a + c - j, b + d - j}] += w * cx * cy;
                }
            }
        }
        return NormalOrderedPolynomial(std::move(out));
    }

    // Coherent-state expectation: A -> z, A^dag -> conj(z).
    Complex coherent_expectation(Complex z) const {
        Complex total{0.0, 0.0};
        for (const auto& [key, c] : terms_) {
            total += c * std::pow(std::conj(z), key.first) * std::pow(z, key.second);
        }
        return total;
    }

   private:
    static double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

    std::map<Key, Complex> terms_;
};

inline NormalOrderedPolynomial power(const NormalOrderedPolynomial& x, int k) {
    auto out = NormalOrderedPolynomial::identity();
    for (int i = 0; i < k; ++i) out = out * x;
    return out;
}

}  // namespace detail

/// Exact <A^dag^k A^k> by normal-ordering (c A^dag - s A)^k (c A - s A^dag)^k,
/// c = cosh 2l, s = sinh 2l, and evaluating on |abar>. Valid at lambda = 0.
inline double mean_power_exact(int k, const CoherentAmplitudes& alpha, double lambda_param) {
    if (k < 1 || k > kMaxFactorialMomentOrder) throw InvalidParameter("k must be in [1, 6]");
    const auto mode = collective_mode(alpha, lambda_param);
    const double c = std::cosh(mode.effective_squeeze);
    const double s = std::sinh(mode.effective_squeeze);
    using Poly = detail::NormalOrderedPolynomial;
    const Poly b(std::map<Poly::Key, Complex>{{{0, 1}, Complex(c)}, {{1, 0}, Complex(-s)}});
    const Poly b_dag(std::map<Poly::Key, Complex>{{{1, 0}, Complex(c)}, {{0, 1}, Complex(-s)}});
    const Poly op = detail::power(b_dag, k) * detail::power(b, k);
    return real_or_throw(op.coherent_expectation(mode.collective_alpha), "mean_power_exact");
}

namespace detail {

// ||b^k |abar>||^2 with b = c A - s A^dag on a single-mode space that keeps
// coherent levels 0..levels-1 and k extra levels of headroom, so b^k itself
// is applied without truncation.
inline double single_mode_fock_mean_power(int k, Complex abar, double c, double s, int levels) {
    const int dim = levels + k;
    std::vector<Complex> psi(static_cast<std::size_t>(dim), Complex(0.0));
    Complex amp = std::exp(-0.5 * std::norm(abar));
    for (int n = 0; n < levels; ++n) {
        psi[static_cast<std::size_t>(n)] = amp;
        amp *= abar / std::sqrt(static_cast<double>(n + 1));
    }
    for (int step = 0; step < k; ++step) {
        std::vector<Complex> next(static_cast<std::size_t>(dim), Complex(0.0));
        for (int n = 0; n < dim; ++n) {
            const Complex x = psi[static_cast<std::size_t>(n)];
            if (x == Complex(0.0)) continue;
            if (n > 0) next[static_cast<std::size_t>(n - 1)] += c * std::sqrt(static_cast<double>(n)) * x;
            if (n + 1 < dim) next[static_cast<std::size_t>(n + 1)] -= s * std::sqrt(static_cast<double>(n + 1)) * x;
        }
        psi = std::move(next);
    }
    double total = 0.0;
    for (const auto& x : psi) total += std::norm(x);
    return total;
}

}  // namespace detail

/// Exact <A^dag^k A^k> by explicit single-mode Fock vectors. The coherent
/// state is truncated at `levels` (0 picks a level count from |abar|), and the
/// result is accepted only if doubling the truncation changes it by less than
/// 1e-12 relative; otherwise NumericError.
inline double mean_power_exact_fock(int k, const CoherentAmplitudes& alpha, double lambda_param, int levels = 0) {
    if (k < 1 || k > kMaxFactorialMomentOrder) throw InvalidParameter("k must be in [1, 6]");
    const auto mode = collective_mode(alpha, lambda_param);
    const double c = std::cosh(mode.effective_squeeze);
    const double s = std::sinh(mode.effective_squeeze);
    if (levels <= 0) {
        const double mean_n = std::norm(mode.collective_alpha);
        levels = 40 + static_cast<int>(std::ceil(mean_n + 12.0 * std::sqrt(mean_n)));
    }
    const double coarse = detail::single_mode_fock_mean_power(k, mode.collective_alpha, c, s, levels);
    const double fine = detail::single_mode_fock_mean_power(k, mode.collective_alpha, c, s, 2 * levels);
    if (std::abs(fine - coarse) > 1e-12 * std::max(1.0, std::abs(fine))) {
        throw NumericError("mean_power_exact_fock: truncation not converged; raise the level count");
    }
    return fine;
}

enum class StatsPath { paper, exact };

/// P_k = <A^dag^k A^k> / <A^dag A>^k - 1 on both paths. The requested path
/// must succeed (its errors propagate); the other is filled in when it can be
/// evaluated.
struct PkResult {
    int k = 2;
    StatsPath path = StatsPath::exact;
    std::optional<double> paper_value;
    std::optional<double> exact_value;
    std::optional<double> discrepancy;

    double value() const { return path == StatsPath::paper ? *paper_value : *exact_value; }
};

namespace detail {

template <typename MeanPower>
double pk_on_path(int k, MeanPower&& mean_power) {
    const double n1 = mean_power(1);
    if (!(std::abs(n1) > 0.0)) throw DomainError("P_k undefined: mean photon number is zero");
    return mean_power(k) / std::pow(n1, k) - 1.0;
}

}  // namespace detail

inline PkResult pk(int k, const CoherentAmplitudes& alpha, double lambda_param, StatsPath path) {
    if (k < 2 || k > kMaxFactorialMomentOrder) throw InvalidParameter("P_k needs 2 <= k <= 6");
    auto paper = [&] {
        return detail::pk_on_path(k, [&](int kk) { return mean_power_paper(kk, alpha, lambda_param); });
    };
    auto exact = [&] {
        return detail::pk_on_path(k, [&](int kk) { return mean_power_exact(kk, alpha, lambda_param); });
    };

    PkResult r;
    r.k = k;
    r.path = path;
    if (path == StatsPath::paper) {
        r.paper_value = paper();
        try {
            r.exact_value = exact();
        } catch (const Error&) {
        }
    } else {
        r.exact_value = exact();
        try {
            r.paper_value = paper();
        } catch (const Error&) {
        }
    }
    if (r.paper_value && r.exact_value) r.discrepancy = std::abs(*r.paper_value - *r.exact_value);
    return r;
}

struct Fig1Row {
    double re_alpha3 = 0.0;
    double im_alpha3 = 0.0;
    double p2_paper = 0.0;
    double p2_exact = 0.0;
};

/// P2 over a grid of alpha3 with alpha1 = alpha2 = lambda = 1, both paths.
/// Rows are ordered with Re(alpha3) outer and Im(alpha3) inner.
inline std::vector<Fig1Row> fig1_scan(const Range& re_range, const Range& im_range) {
    constexpr double kLambda = 1.0;
    const auto re_values = re_range.values();
    const auto im_values = im_range.values();
    if (re_values.empty() || im_values.empty()) throw InvalidParameter("fig1_scan: empty grid");
    std::vector<Fig1Row> rows;
    rows.reserve(re_values.size() * im_values.size());
    for (double re : re_values) {
        for (double im : im_values) {
            const CoherentAmplitudes alpha(1.0, 1.0, Complex(re, im));
            const auto r = pk(2, alpha, kLambda, StatsPath::paper);
            if (!r.exact_value) throw NumericError("fig1_scan: exact path failed");
            rows.push_back({re, im, *r.paper_value, *r.exact_value});
        }
    }
    return rows;
}

}  // namespace trimode
