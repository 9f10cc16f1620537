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

// Machine-readable list of formula misprints found by cross-checking the
// closed forms against the independent evaluators in this library, plus the
// figure claims that the corrected formulas do not reproduce.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"
#include "trimode/bell.hpp"
#include "trimode/cli/table.hpp"
#include "trimode/fock_oracle.hpp"
#include "trimode/gaussian_state.hpp"
#include "trimode/photon_statistics.hpp"
#include "trimode/quadrature.hpp"
#include "trimode/symplectic_core.hpp"

namespace trimode::cli {

struct ErrataEvidence {
    std::string point;
    double literal = 0.0;
    double implemented = 0.0;
    std::optional<double> reference;  // independent oracle, when one exists
    double discrepancy() const { return std::abs(literal - implemented); }
};

struct ErrataEntry {
    std::string id;
    std::string location;
    std::string literal_formula;
    std::string implemented_formula;
    std::string evidence_kind;
    std::vector<ErrataEvidence> evidence;

    double max_discrepancy() const {
        double m = 0.0;
        for (const auto& e : evidence) m = std::max(m, e.discrepancy());
        return m;
    }
};

/// Entries whose literal and implemented values agree to this level at every
/// evidence point are not reported.
inline constexpr double kErrataDropTol = 1e-12;

namespace errata_detail {

inline std::string describe(double lambda, const CoherentAmplitudes& a) {
    auto z = [](Complex c) { return "(" + format_double(c.real()) + "," + format_double(c.imag()) + ")"; };
    return "lambda=" + format_double(lambda) + " alpha=[" + z(a[0]) + "," + z(a[1]) + "," + z(a[2]) + "]";
}

// Wigner function with Lam on q and Gam on p (the printed placement); at
// lambda it equals the correct function at -lambda.
inline double wigner_printed_placement(const GaussianState& s, const Vector3& q, const Vector3& p) {
    return wigner(make_state(-s.lambda_param, s.alpha), q, p);
}

// Printed line-2 reading: the momentum argument replaced by q.
inline double wigner_printed_line2(const GaussianState& s, const Vector3& q) {
    const Vector3 a = s.mats.Lam * q - s.alpha.quadrature_q();
    const Vector3 b = s.mats.Gam * q - s.alpha.quadrature_p();
    return std::exp(-a.squaredNorm() - b.squaredNorm()) / std::pow(std::numbers::pi, 3);
}

// Printed scalar expansion (fourth line) taken at face value, with the
// coefficient placement of the lines above it.
inline double wigner_printed_line4(const GaussianState& s, const Vector3& q, const Vector3& p) {
    const auto& m = s.mats;
    const Vector3 sig = s.alpha.quadrature_q();
    const Vector3 chi = s.alpha.quadrature_p();
    auto block = [](double u, double v, const Vector3& x, const Vector3& t) {
        double e = 0.0;
        for (int j = 0; j < 3; ++j) e -= (u * u + 2 * v * v) * x(j) * x(j) - t(j) * t(j) + 2 * u * x(j) * t(j);
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < j; ++k) e -= 2 * ((2 * u * v + v * v) * x(j) * x(k) + 2 * v * x(j) * t(k));
        return e;
    };
    return std::exp(block(m.u1, m.v1, q, sig) + block(m.u2, m.v2, p, chi)) / std::pow(std::numbers::pi, 3);
}

}  // namespace errata_detail

inline std::vector<ErrataEntry> collect_errata() {
    using namespace errata_detail;
    std::vector<ErrataEntry> out;
    const double pi3 = std::pow(std::numbers::pi, 3);

    // E1: Wigner closed form, second line uses q where p belongs.
    {
        ErrataEntry e{"E1", "Wigner function of S3|alpha>, second line of the closed form",
                      "W = pi^-3 exp[-(e^{-lambda A} q - sigma)^2 - (e^{lambda A} q - chi)^2]",
                      "second exponent uses p: (e^{lambda A} p - chi)^2, then the placement fix of E4",
                      "normalization integral over a +/-6 sigma box, 41 points per axis; the literal form has no p "
                      "dependence, so its integral grows with the p-box volume",
                      {}};
        for (double lambda : {0.2, 0.5}) {
            const CoherentAmplitudes a(0.3, Complex(0.1, 0.2), -0.2);
            const auto s = make_state(lambda, a);
            const Vector3 qbar = s.mean.head<3>();
            const Vector3 q_half = 6.0 * s.cov.diagonal().head<3>().cwiseSqrt();
            const Vector3 p_half = 6.0 * s.cov.diagonal().tail<3>().cwiseSqrt();
            const double q_integral = trapezoid_3d([&](const Vector3& q) { return wigner_printed_line2(s, q); },
                                                   qbar - q_half, qbar + q_half, 41);
            const double p_volume = (2.0 * p_half).prod();
            e.evidence.push_back({describe(lambda, a), q_integral * p_volume, wigner_normalization(s), 1.0});
        }
        out.push_back(std::move(e));
    }

    // E2: G and M sums mix the indices i and j.
    {
        ErrataEntry e{"E2", "definition of G and M in the factorial-moment closed form",
                      "G = i sum_j (sqrt(2u/3v) alpha_i^* - sqrt(2v/3u) alpha_j), M likewise (i read as mode 1)",
                      "single summation index: G = i sum_j (sqrt(2u/3v) alpha_j^* - sqrt(2v/3u) alpha_j)",
                      "Re(G M) against the printed closed form of G M written in the amplitudes",
                      {}};
        for (const auto& [lambda, a] : std::vector<std::pair<double, CoherentAmplitudes>>{
                 {0.5, CoherentAmplitudes(1.0, 0.5, Complex(0.0, 0.2))},
                 {1.0, CoherentAmplitudes(0.3, -0.2, Complex(0.1, 0.4))}}) {
            const auto r = detail::collective_ratios(lambda);
            const Complex i(0.0, 1.0);
            const Complex s = a.sum();
            const Complex g_lit = i * (3.0 * r.root_uv * std::conj(a[0]) - r.root_vu * s);
            const Complex m_lit = i * (3.0 * r.root_uv * a[0] - r.root_vu * std::conj(s));
            const auto gm = gm_pair(a, lambda);
            e.evidence.push_back({describe(lambda, a), (g_lit * m_lit).real(), (gm.G * gm.M).real(),
                                  gm_product_closed_form(a, lambda).real()});
        }
        out.push_back(std::move(e));
    }

    // E3: Heisenberg image of the collective mode.
    {
        ErrataEntry e{"E3", "similarity transform of the collective mode A under S3",
                      "S3^-1 A S3 = (v A + u A^dag)/sqrt(2), u = e^{-2l}+e^{2l}, v = e^{-2l}-e^{2l}",
                      "S3^-1 A S3 = (u A + v A^dag)/2 = cosh(2l) A - sinh(2l) A^dag",
                      "Re<A> in S3|alpha> measured in a truncated Fock space (cutoff 12)",
                      {}};
        const FockArena arena(12);
        for (double lambda : {0.0, 0.2}) {
            const CoherentAmplitudes a(0.3, Complex(0.0, 0.2), 0.1);
            const Complex abar = a.sum() / std::sqrt(3.0);
            const double u = std::exp(-2 * lambda) + std::exp(2 * lambda);
            const double v = std::exp(-2 * lambda) - std::exp(2 * lambda);
            const Complex literal = (v * abar + u * std::conj(abar)) / std::sqrt(2.0);
            const Complex fixed = std::cosh(2 * lambda) * abar - std::sinh(2 * lambda) * std::conj(abar);
            const auto ket = s3_unitary(arena, lambda, false).apply(coherent_ket(arena, a));
            const Complex oracle = expect(arena, ket, arena.collective());
            e.evidence.push_back({describe(lambda, a), literal.real(), fixed.real(), oracle.real()});
        }
        out.push_back(std::move(e));
    }

    // E4: squeeze matrices placed on the wrong phase-space block.
    {
        ErrataEntry e{"E4", "Wigner function of S3|alpha>, placement of e^{-lambda A} and e^{lambda A}",
                      "W = pi^-3 exp[-(e^{-lambda A} q - sigma)^2 - (e^{lambda A} p - chi)^2]",
                      "W = pi^-3 exp[-(e^{lambda A} q - sigma)^2 - (e^{-lambda A} p - chi)^2]",
                      "pi^3 W against displaced parity measured in a truncated Fock space (cutoff 14)",
                      {}};
        const FockArena arena(kDefaultCutoff);
        const double lambda = 0.2;
        const CoherentAmplitudes a(0.3, Complex(0.2, 0.1), -0.25);
        const auto s = make_state(lambda, a);
        const auto ket = s3_unitary(arena, lambda, false).apply(coherent_ket(arena, a));
        for (const Displacements& beta : {Displacements{Complex(0.0), Complex(0.0), Complex(0.0)},
                                          Displacements{Complex(0.1, 0.05), Complex(-0.2, 0.0), Complex(0.15, -0.1)}}) {
            const auto [q, p] = phase_point(beta);
            e.evidence.push_back({describe(lambda, a) + " beta=[" + format_double(beta[0].real()) + "...]",
                                  pi3 * wigner_printed_placement(s, q, p), pi3 * wigner(s, q, p),
                                  displaced_parity(arena, ket, beta)});
        }
        out.push_back(std::move(e));
    }

    // E5: simplified k = 2 factorial moment.
    {
        ErrataEntry e{"E5", "k = 2 factorial moment, simplified hyperbolic form",
                      "sinh^2(-4l) [2^-5 tanh^2(-2l) + 2 G M tanh(2l) + (G^2-2)(M^2-2)]",
                      "sinh^2(-4l) [2^-5 tanh^2(-2l) + (1/2) G M tanh(2l) + (G^2-2)(M^2-2)] (equal to the Hermite form)",
                      "value of the printed simplification against the Hermite-series form at k = 2",
                      {}};
        for (const auto& [lambda, a] : std::vector<std::pair<double, CoherentAmplitudes>>{
                 {1.0, CoherentAmplitudes(1.0, 1.0, 0.3)}, {0.5, CoherentAmplitudes(0.5, 0.2, 0.1)}}) {
            e.evidence.push_back({describe(lambda, a), second_factorial_moment_simplified(a, lambda),
                                  second_factorial_moment_closed_form(a, lambda), mean_power_paper(2, a, lambda)});
        }
        out.push_back(std::move(e));
    }

    // E6: scalar expansion of the Wigner exponent.
    {
        ErrataEntry e{"E6", "Wigner function of S3|alpha>, fully expanded scalar form",
                      "-sum_j[(u1^2+2v1^2) q_j^2 - sigma_j^2 + 2 u1 q_j sigma_j] - 2 sum_{j>k}[(2u1v1+v1^2) q_j q_k + "
                      "2 v1 q_j sigma_k] (and the p analogue)",
                      "-sum_j[(U^2+2V^2) q_j^2 + sigma_j^2 - 2 U q_j sigma_j] - 2 sum_{j>k}[(2UV+V^2) q_j q_k - "
                      "V (q_j sigma_k + q_k sigma_j)] with (U,V) = (u2,v2) on q and (u1,v1) on p",
                      "pi^3 W of the expanded form against the compact squared form with the same placement; the "
                      "literal expansion exceeds the physical bound pi^3 W <= 1",
                      {}};
        const CoherentAmplitudes a(0.4, 0.5, 0.6);
        const auto s = make_state(0.5, a);
        for (const Vector3& q : {Vector3(0.0, 0.0, 0.0), Vector3(0.2, -0.1, 0.3)}) {
            const Vector3 p = Vector3::Zero();
            e.evidence.push_back({describe(0.5, a) + " q=[" + format_double(q(0)) + "," + format_double(q(1)) + "," +
                                      format_double(q(2)) + "]",
                                  pi3 * wigner_printed_line4(s, q, p), pi3 * wigner_printed_placement(s, q, p),
                                  std::nullopt});
        }
        out.push_back(std::move(e));
    }

    // E7: two-mode quadrature Y defined identically to X.
    {
        ErrataEntry e{"E7", "two-mode quadratures of the baseline squeezed state",
                      "X = (Q1 + Q2)/2, Y = (Q1 + Q2)/2",
                      "Y = (P1 + P2)/2, giving Var(Y) = e^{2 lambda}/4",
                      "Var(Y) of the two-mode squeezed vacuum from its covariance (series exponential of the "
                      "two-mode coupling) under each definition",
                      {}};
        Matrix3 a2 = Matrix3::Zero();
        a2(0, 1) = a2(1, 0) = 1.0;
        for (double lambda : {0.25, 0.5}) {
            const Matrix3 lam = expm_series(Matrix3(-lambda * a2));
            const Matrix3 gam = expm_series(Matrix3(lambda * a2));
            const Vector3 c(0.5, 0.5, 0.0);
            const double var_q = c.dot(0.5 * lam * lam.transpose() * c);
            const double var_p = c.dot(0.5 * gam * gam.transpose() * c);
            e.evidence.push_back({"lambda=" + format_double(lambda), var_q, var_p,
                                  two_mode_baseline_variance(lambda).y});
        }
        out.push_back(std::move(e));
    }

    // E8: vacuum limit of the k = 1 factorial moment.
    {
        ErrataEntry e{"E8", "k = 1 factorial moment closed form at alpha = 0",
                      "[G M - tanh(-2l)/8] sinh(4l) -> sinh^2(2l)/4 at alpha = 0",
                      "exact single-mode reduction: sinh^2(2l) at alpha = 0",
                      "<A^dag A> of S3|000> measured in a truncated Fock space (cutoff 14)",
                      {}};
        const FockArena arena(kDefaultCutoff);
        const CoherentAmplitudes vac;
        for (double lambda : {0.2, 0.3}) {
            const auto ket = s3_unitary(arena, lambda, false).apply(arena.basis_ket(0, 0, 0));
            e.evidence.push_back({describe(lambda, vac), mean_power_paper(1, vac, lambda),
                                  mean_power_exact(1, vac, lambda), mean_power(arena, ket, 1)});
        }
        out.push_back(std::move(e));
    }

    std::erase_if(out, [](const ErrataEntry& e) { return e.max_discrepancy() <= kErrataDropTol; });
    return out;
}

struct ClaimCheck {
    std::string id;
    std::string claim;
    std::string observed;
    std::vector<std::pair<std::string, double>> values;
};

/// Figure-level statements that the corrected formulas do not reproduce.
inline std::vector<ClaimCheck> collect_claims() {
    std::vector<ClaimCheck> out;
    {
        ClaimCheck c{"F1", "P2 < 0 only for -0.5 < Re(alpha3) < 0.5 and constant along Im(alpha3) (alpha1 = alpha2 = lambda = 1)",
                     "the Hermite closed form gives P2 < 0 across Re(alpha3) in [-1, 1] and varies with Im(alpha3) "
                     "at the 1e-4 level; the exact reduction gives P2 > 0 throughout",
                     {}};
        for (double re : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
            const auto r = pk(2, CoherentAmplitudes(1.0, 1.0, re), 1.0, StatsPath::paper);
            c.values.emplace_back("p2_paper(re=" + format_double(re) + ",im=0)", *r.paper_value);
            c.values.emplace_back("p2_exact(re=" + format_double(re) + ",im=0)", *r.exact_value);
        }
        const double at0 = pk(2, CoherentAmplitudes(1.0, 1.0, 0.0), 1.0, StatsPath::paper).value();
        const double at1 = pk(2, CoherentAmplitudes(1.0, 1.0, Complex(0.0, 1.0)), 1.0, StatsPath::paper).value();
        c.values.emplace_back("p2_paper(re=0,im=1) - p2_paper(re=0,im=0)", at1 - at0);
        out.push_back(std::move(c));
    }
    {
        ClaimCheck c{"F2", "max_b B(3) > 2 for lambda in (0, 1) with alpha = (0.4, 0.5, 0.6), plateau above 2 at large lambda",
                     "with alpha = (0.4, 0.5, 0.6) the displaced state keeps every pi^3 W small and max_b B(3) stays "
                     "below 0.7; the same beta pattern on the squeezed vacuum (alpha = 0) does exceed 2",
                     {}};
        const Range bs(0.01, 0.01, 2.0);
        for (double lambda : {0.5, 1.0, 4.0}) {
            c.values.emplace_back("b3_max(alpha=fig2,lambda=" + format_double(lambda) + ")",
                                  maximize_over_b(make_state(lambda, Fig2Config::alpha()), bs).b3_max);
            c.values.emplace_back("b3_max(alpha=0,lambda=" + format_double(lambda) + ")",
                                  maximize_over_b(make_state(lambda, CoherentAmplitudes()), bs).b3_max);
        }
        out.push_back(std::move(c));
    }
    return out;
}

inline nlohmann::json errata_report() {
    nlohmann::json doc;
    doc["errata"] = nlohmann::json::array();
    for (const auto& e : collect_errata()) {
        nlohmann::json j;
        j["id"] = e.id;
        j["location"] = e.location;
        j["literal_formula"] = e.literal_formula;
        j["implemented_formula"] = e.implemented_formula;
        j["evidence_kind"] = e.evidence_kind;
        j["max_discrepancy"] = rounded(e.max_discrepancy());
        j["evidence"] = nlohmann::json::array();
        for (const auto& ev : e.evidence) {
            nlohmann::json x;
            x["point"] = ev.point;
            x["literal_value"] = rounded(ev.literal);
            x["implemented_value"] = rounded(ev.implemented);
            x["reference_value"] = ev.reference ? nlohmann::json(rounded(*ev.reference)) : nlohmann::json(nullptr);
            x["discrepancy"] = rounded(ev.discrepancy());
            j["evidence"].push_back(std::move(x));
        }
        doc["errata"].push_back(std::move(j));
    }
    doc["unreproduced_claims"] = nlohmann::json::array();
    for (const auto& c : collect_claims()) {
        nlohmann::json j;
        j["id"] = c.id;
        j["claim"] = c.claim;
        j["observed"] = c.observed;
        j["values"] = nlohmann::json::object();
        for (const auto& [k, v] : c.values) j["values"][k] = rounded(v);
        doc["unreproduced_claims"].push_back(std::move(j));
    }
    return doc;
}

}  // namespace trimode::cli
