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

#include <charconv>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "trimode/bell.hpp"
#include "trimode/cli/errata.hpp"
#include "trimode/cli/table.hpp"
#include "trimode/error.hpp"
#include "trimode/fock_oracle.hpp"
#include "trimode/gaussian_state.hpp"
#include "trimode/grid.hpp"
#include "trimode/photon_statistics.hpp"

namespace trimode::cli {

enum class Subcommand { moments, pk, fig1, wigner, bell, fig2, oracle_check, errata };
enum class OutputFormat { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumeric = 3;

inline std::string_view subcommand_name(Subcommand s) {
    switch (s) {
        case Subcommand::moments: return "moments";
        case Subcommand::pk: return "pk";
        case Subcommand::fig1: return "fig1";
        case Subcommand::wigner: return "wigner";
        case Subcommand::bell: return "bell";
        case Subcommand::fig2: return "fig2";
        case Subcommand::oracle_check: return "oracle-check";
        case Subcommand::errata: return "errata";
    }
    return "";
}

inline std::optional<Subcommand> parse_subcommand(std::string_view name) {
    for (auto s : {Subcommand::moments, Subcommand::pk, Subcommand::fig1, Subcommand::wigner, Subcommand::bell,
                   Subcommand::fig2, Subcommand::oracle_check, Subcommand::errata})
        if (subcommand_name(s) == name) return s;
    return std::nullopt;
}

struct RunConfig {
    Subcommand subcommand = Subcommand::moments;
    double lambda_param = 0.2;
    std::optional<CoherentAmplitudes> alpha;  // subcommand default when empty
    int m_max = 4;
    int k = 2;                                // pk: rows 2..k; oracle-check mean_power: order
    StatsPath path = StatsPath::exact;
    Range re_range{-1.0, 0.05, 1.0};
    Range im_range{-1.0, 0.05, 1.0};
    Range lambda_range{0.0, 0.02, 1.0};
    Range b_range{0.01, 0.01, 2.0};
    Vector3 q = Vector3::Zero();
    Vector3 p = Vector3::Zero();
    bool optimize = false;
    std::string quantity = "var_x3";
    std::vector<int> cutoffs{8, 10, 12, 14};
    double b = 0.5;                           // oracle-check b3
    OutputFormat format = OutputFormat::csv;
    std::optional<std::string> out_path;
    bool gnuplot = false;
};

// ---------------------------------------------------------------------------
// Argument parsing helpers shared by the front end and the tests.

inline double parse_double(std::string_view text, const char* what) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(value))
        throw InvalidParameter(std::string(what) + ": cannot parse '" + std::string(text) + "' as a finite number");
    return value;
}

/// Parses "re", "imi", "re+imi" or "re-imi"; a bare "i" stands for 1i.
inline Complex parse_complex(std::string_view text) {
    if (text.empty()) throw InvalidParameter("empty complex number");
    if (text.back() != 'i') return {parse_double(text, "complex"), 0.0};
    const std::string_view body = text.substr(0, text.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t j = body.size(); j-- > 1;) {
        if ((body[j] == '+' || body[j] == '-') && body[j - 1] != 'e' && body[j - 1] != 'E') {
            split = j;
            break;
        }
    }
    auto imag_part = [](std::string_view s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return parse_double(s.front() == '+' ? s.substr(1) : s, "complex");
    };
    if (split == std::string_view::npos) return {0.0, imag_part(body)};
    return {parse_double(body.substr(0, split), "complex"), imag_part(body.substr(split))};
}

inline std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(',', start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

/// Three comma-separated complex amplitudes, e.g. "0.4,0.5+0.1i,-0.2i".
inline CoherentAmplitudes parse_alpha(std::string_view text) {
    const auto parts = split_commas(text);
    if (parts.size() != 3) throw InvalidParameter("alpha needs exactly three comma-separated values");
    return {parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2])};
}

inline Vector3 parse_vector3(std::string_view text, const char* what) {
    const auto parts = split_commas(text);
    if (parts.size() != 3) throw InvalidParameter(std::string(what) + " needs exactly three comma-separated values");
    return {parse_double(parts[0], what), parse_double(parts[1], what), parse_double(parts[2], what)};
}

inline std::vector<int> parse_cutoffs(std::string_view text) {
    std::vector<int> out;
    for (auto part : split_commas(text)) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
            throw InvalidParameter("cutoffs: cannot parse '" + std::string(part) + "'");
        out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subcommand tables.

namespace run_detail {

inline nlohmann::json complex_json(Complex z) { return nlohmann::json::array({rounded(z.real()), rounded(z.imag())}); }

inline nlohmann::json alpha_json(const CoherentAmplitudes& a) {
    return nlohmann::json::array({complex_json(a[0]), complex_json(a[1]), complex_json(a[2])});
}

inline nlohmann::json range_json(const Range& r) {
    return {{"start", rounded(r.start)}, {"step", rounded(r.step)}, {"end", rounded(r.end)}};
}

inline Table moments_table(const RunConfig& c, nlohmann::json& params) {
    if (c.m_max < 1 || c.m_max > 16) throw InvalidParameter("m-max must lie in [1, 16]");
    params["lambda"] = rounded(c.lambda_param);
    params["m_max"] = c.m_max;
    Table t{{"m", "hos_x", "hos_y", "product"}, {}};
    for (int m = 1; m <= c.m_max; ++m) {
        const double x = hos_x(c.lambda_param, m);
        const double y = hos_y(c.lambda_param, m);
        t.add_row({std::int64_t{m}, x, y, x * y});
    }
    return t;
}

inline Table pk_table(const RunConfig& c, nlohmann::json& params) {
    if (c.k < 2 || c.k > kMaxFactorialMomentOrder)
        throw InvalidParameter("k must lie in [2, " + std::to_string(kMaxFactorialMomentOrder) + "]");
    const auto alpha = c.alpha.value_or(CoherentAmplitudes());
    params["lambda"] = rounded(c.lambda_param);
    params["alpha"] = alpha_json(alpha);
    params["k_max"] = c.k;
    params["path"] = c.path == StatsPath::paper ? "paper" : "exact";
    Table t{{"k", "paper_value", "exact_value", "discrepancy"}, {}};
    for (int k = 2; k <= c.k; ++k) {
        const auto r = pk(k, alpha, c.lambda_param, c.path);
        t.add_row({std::int64_t{k}, optional_cell(r.paper_value), optional_cell(r.exact_value),
                   optional_cell(r.discrepancy)});
    }
    return t;
}

inline Table fig1_table(const RunConfig& c, nlohmann::json& params) {
    params["alpha1"] = 1.0;
    params["alpha2"] = 1.0;
    params["lambda"] = 1.0;
    params["re"] = range_json(c.re_range);
    params["im"] = range_json(c.im_range);
    Table t{{"re_alpha3", "im_alpha3", "p2_paper", "p2_exact"}, {}};
    for (const auto& r : fig1_scan(c.re_range, c.im_range)) t.add_row({r.re_alpha3, r.im_alpha3, r.p2_paper, r.p2_exact});
    return t;
}

inline Table wigner_table(const RunConfig& c, nlohmann::json& params) {
    const auto alpha = c.alpha.value_or(CoherentAmplitudes());
    const auto state = make_state(c.lambda_param, alpha);
    params["lambda"] = rounded(c.lambda_param);
    params["alpha"] = alpha_json(alpha);
    Table t{{"q1", "q2", "q3", "p1", "p2", "p3", "wigner", "wigner_covariance", "parity"}, {}};
    const Vector3& q = c.q;
    const Vector3& p = c.p;
    const double w = wigner(state, q, p);
    t.add_row({q(0), q(1), q(2), p(0), p(1), p(2), w, wigner_covariance(state, q, p),
               std::pow(std::numbers::pi, 3) * w});
    return t;
}

inline Table bell_table(const RunConfig& c, nlohmann::json& params) {
    const auto alpha = c.alpha.value_or(Fig2Config::alpha());
    const auto state = make_state(c.lambda_param, alpha);
    params["lambda"] = rounded(c.lambda_param);
    params["alpha"] = alpha_json(alpha);
    params["b"] = range_json(c.b_range);
    params["optimize"] = c.optimize;
    if (!c.optimize) {
        Table t{{"b", "b3"}, {}};
        for (double b : c.b_range.values()) t.add_row({b, b3(state, Fig2Config::setting(b))});
        return t;
    }
    const auto best = maximize_over_b(state, c.b_range);
    const auto result = global_search_heuristic(state, Fig2Config::setting(best.b_star));
    std::vector<std::string> cols{"b_seed", "b3_seed", "b3_heuristic", "iterations", "converged"};
    Row row{best.b_star, best.b3_max, result.b3, std::int64_t{result.iterations},
            std::int64_t{result.converged ? 1 : 0}};
    const char* names[2] = {"beta", "beta_prime"};
    for (int set = 0; set < 2; ++set) {
        const auto& d = set == 0 ? result.setting.beta : result.setting.beta_prime;
        for (int j = 0; j < 3; ++j) {
            const std::string stem = std::string(names[set]) + std::to_string(j + 1);
            cols.push_back(stem + "_re");
            cols.push_back(stem + "_im");
            row.push_back(d[j].real());
            row.push_back(d[j].imag());
        }
    }
    Table t{cols, {}};
    t.add_row(std::move(row));
    return t;
}

inline Table fig2_table(const RunConfig& c, nlohmann::json& params) {
    const auto alpha = c.alpha.value_or(Fig2Config::alpha());
    params["alpha"] = alpha_json(alpha);
    params["lambda"] = range_json(c.lambda_range);
    params["b"] = range_json(c.b_range);
    Table t{{"lambda", "b_star", "b3_max"}, {}};
    for (const auto& r : fig2_scan(c.lambda_range, c.b_range, alpha)) t.add_row({r.lambda, r.b_star, r.b3_max});
    return t;
}

inline Table oracle_table(const RunConfig& c, nlohmann::json& params) {
    const auto alpha = c.alpha.value_or(CoherentAmplitudes());
    const double lambda = c.lambda_param;
    const auto state = make_state(lambda, alpha);
    params["lambda"] = rounded(lambda);
    params["alpha"] = alpha_json(alpha);
    params["quantity"] = c.quantity;
    params["cutoffs"] = c.cutoffs;

    auto squeezed = [&](const FockArena& arena) {
        return s3_unitary(arena, lambda).apply(coherent_ket(arena, alpha));
    };
    std::function<double(int)> quantity;
    double analytic = 0.0;
    if (c.quantity == "var_x3") {
        quantity = [&](int n) { FockArena a(n); return moment_x3(a, squeezed(a), 2); };
        analytic = central_moment(state, MomentQuery::x3(2));
    } else if (c.quantity == "var_y3") {
        quantity = [&](int n) { FockArena a(n); return moment_y3(a, squeezed(a), 2); };
        analytic = central_moment(state, MomentQuery::y3(2));
    } else if (c.quantity == "vacuum_amplitude") {
        quantity = [&](int n) {
            FockArena a(n);
            return amplitude(a, s3_unitary(a, lambda).apply(a.basis_ket(0, 0, 0)), 0, 0, 0).real();
        };
        analytic = normal_order_coefficients(lambda).prefactor;
    } else if (c.quantity == "mean_power") {
        if (c.k < 1 || c.k > kMaxFactorialMomentOrder) throw InvalidParameter("k out of range for mean_power");
        params["k"] = c.k;
        quantity = [&](int n) { FockArena a(n); return mean_power(a, squeezed(a), c.k); };
        analytic = mean_power_exact(c.k, alpha, lambda);
    } else if (c.quantity == "parity") {
        params["q"] = {rounded(c.q(0)), rounded(c.q(1)), rounded(c.q(2))};
        params["p"] = {rounded(c.p(0)), rounded(c.p(1)), rounded(c.p(2))};
        Displacements beta;
        for (int j = 0; j < 3; ++j) beta[j] = Complex(c.q(j), c.p(j)) / std::sqrt(2.0);
        quantity = [&, beta](int n) { FockArena a(n); return displaced_parity(a, squeezed(a), beta); };
        analytic = parity_expectation(state, beta);
    } else if (c.quantity == "norm") {
        quantity = [&](int n) { FockArena a(n); return squeezed(a).norm(); };
        analytic = 1.0;
    } else if (c.quantity == "b3") {
        params["b"] = rounded(c.b);
        const auto setting = Fig2Config::setting(c.b);
        quantity = [&, setting](int n) { return b3_oracle_check(lambda, alpha, setting, n).oracle; };
        analytic = b3(state, setting);
    } else {
        throw InvalidParameter("unknown oracle quantity '" + c.quantity +
                               "' (expected var_x3, var_y3, vacuum_amplitude, mean_power, parity, norm or b3)");
    }
    const auto report = convergence_report(quantity, c.cutoffs);
    params["monotone"] = report.monotone;
    Table t{{"cutoff", "value", "delta", "analytic"}, {}};
    for (const auto& r : report.rows) t.add_row({std::int64_t{r.cutoff}, r.value, optional_cell(r.delta), analytic});
    return t;
}

inline Table errata_table(const nlohmann::json& doc) {
    Table t{{"id", "location", "max_discrepancy"}, {}};
    for (const auto& e : doc["errata"])
        t.add_row({e["id"].get<std::string>(), e["location"].get<std::string>(), e["max_discrepancy"].get<double>()});
    return t;
}

inline std::string gnuplot_script(const RunConfig& c, const std::string& data_path) {
    std::ostringstream s;
    s << "set datafile separator ','\nset key autotitle columnhead\n";
    switch (c.subcommand) {
        case Subcommand::fig1:
            s << "set xlabel 'Re(alpha3)'\nset ylabel 'Im(alpha3)'\nset zlabel 'P2'\n"
              << "splot '" << data_path << "' using 1:2:3 with points, '' using 1:2:4 with points\n";
            break;
        case Subcommand::fig2:
            s << "set xlabel 'lambda'\nset ylabel 'max B(3)'\n"
              << "plot '" << data_path << "' using 1:3 with lines, 2 with lines dashtype 2 title 'local bound'\n";
            break;
        case Subcommand::moments:
            s << "set logscale y\nset xlabel 'm'\n"
              << "plot '" << data_path << "' using 1:2 with linespoints, '' using 1:3 with linespoints\n";
            break;
        case Subcommand::bell:
            s << "set xlabel 'b'\nplot '" << data_path << "' using 1:2 with lines\n";
            break;
        case Subcommand::oracle_check:
            s << "set xlabel 'cutoff'\nplot '" << data_path << "' using 1:2 with linespoints, '' using 1:4 with lines\n";
            break;
        default:
            s << "plot '" << data_path << "' using 1:2\n";
    }
    return s.str();
}

inline std::string render(const RunConfig& c) {
    nlohmann::json params = nlohmann::json::object();
    std::ostringstream body;
    if (c.subcommand == Subcommand::errata) {
        auto doc = errata_report();
        if (c.format == OutputFormat::csv) {
            write_csv(body, errata_table(doc));
        } else {
            nlohmann::json out{{"subcommand", "errata"}, {"parameters", params}};
            out["errata"] = std::move(doc["errata"]);
            out["unreproduced_claims"] = std::move(doc["unreproduced_claims"]);
            body << out.dump(2) << '\n';
        }
        return body.str();
    }
    Table t;
    switch (c.subcommand) {
        case Subcommand::moments: t = moments_table(c, params); break;
        case Subcommand::pk: t = pk_table(c, params); break;
        case Subcommand::fig1: t = fig1_table(c, params); break;
        case Subcommand::wigner: t = wigner_table(c, params); break;
        case Subcommand::bell: t = bell_table(c, params); break;
        case Subcommand::fig2: t = fig2_table(c, params); break;
        case Subcommand::oracle_check: t = oracle_table(c, params); break;
        case Subcommand::errata: break;
    }
    if (c.format == OutputFormat::csv) {
        write_csv(body, t);
    } else {
        nlohmann::json out{{"subcommand", std::string(subcommand_name(c.subcommand))}, {"parameters", params}};
        out["rows"] = rows_to_json(t);
        body << out.dump(2) << '\n';
    }
    return body.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidParameter("cannot open '" + path + "' for writing");
    f << text;
    f.close();
    if (!f) throw InvalidParameter("failed writing '" + path + "'");
}

}  // namespace run_detail

/// Executes one subcommand. Data goes to `out` unless an output path is set;
/// diagnostics go to `err`. Returns 0, 2 (bad arguments) or 3 (numeric failure).
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.gnuplot && (!config.out_path || config.format != OutputFormat::csv))
            throw InvalidParameter("--gnuplot needs --out and csv format");
        const std::string text = run_detail::render(config);
        if (config.out_path) {
            run_detail::write_file(*config.out_path, text);
            if (config.gnuplot)
                run_detail::write_file(*config.out_path + ".gp", run_detail::gnuplot_script(config, *config.out_path));
        } else {
            out << text;
            out.flush();
        }
        return kExitOk;
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::bad_alloc&) {
        err << "numeric failure: out of memory\n";
        return kExitNumeric;
    }
}

}  // namespace trimode::cli
