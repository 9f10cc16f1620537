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


// Command-line front end: parses flags into a RunConfig and hands it to run().

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "trimode/cli/run.hpp"

namespace {

using trimode::cli::RunConfig;
using trimode::cli::Subcommand;

struct RawFlags {
    std::string lambda;
    std::string alpha;
    std::string re = "-1:0.05:1";
    std::string im = "-1:0.05:1";
    std::string b;
    std::string q;
    std::string p;
    std::string cutoffs;
    std::string path = "exact";
};

void apply(const RawFlags& raw, RunConfig& c) {
    using namespace trimode;
    using namespace trimode::cli;
    const bool ranged_lambda = c.subcommand == Subcommand::fig2;
    if (!raw.lambda.empty()) {
        if (ranged_lambda) c.lambda_range = Range::parse(raw.lambda);
        else c.lambda_param = parse_double(raw.lambda, "lambda");
    }
    if (!raw.alpha.empty()) c.alpha = parse_alpha(raw.alpha);
    c.re_range = Range::parse(raw.re);
    c.im_range = Range::parse(raw.im);
    if (!raw.b.empty()) {
        if (c.subcommand == Subcommand::oracle_check) c.b = parse_double(raw.b, "b");
        else c.b_range = Range::parse(raw.b);
    }
    if (!raw.q.empty()) c.q = parse_vector3(raw.q, "q");
    if (!raw.p.empty()) c.p = parse_vector3(raw.p, "p");
    if (!raw.cutoffs.empty()) c.cutoffs = parse_cutoffs(raw.cutoffs);
    if (raw.path == "paper") c.path = StatsPath::paper;
    else if (raw.path == "exact") c.path = StatsPath::exact;
    else throw InvalidParameter("path must be 'paper' or 'exact'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-mode squeezing numerics: moments, photon statistics, Wigner function and Bell scans"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    RunConfig config;
    RawFlags raw;
    std::string format = "csv";
    std::string out_path;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "Output file (standard output when omitted)");
    app.add_flag("--gnuplot", config.gnuplot, "Also write <out>.gp plotting the CSV");

    const char* kAlphaHelp = "Coherent amplitudes, three comma-separated complex numbers such as 0.4,0.5+0.1i,-0.2i";
    std::map<CLI::App*, Subcommand> kinds;
    auto sub = [&](Subcommand kind, const char* help) {
        auto* s = app.add_subcommand(std::string(trimode::cli::subcommand_name(kind)), help);
        kinds[s] = kind;
        return s;
    };

    auto* moments = sub(Subcommand::moments, "Even-order quadrature moments of the three-mode state");
    moments->add_option("--lambda", raw.lambda, "Squeezing parameter");
    moments->add_option("--m-max", config.m_max, "Largest half-order m");

    auto* pk = sub(Subcommand::pk, "Higher-order photon statistics P_k of the collective mode");
    pk->add_option("--lambda", raw.lambda, "Squeezing parameter");
    pk->add_option("--alpha", raw.alpha, kAlphaHelp);
    pk->add_option("--k", config.k, "Rows k = 2..K");
    pk->add_option("--path", raw.path, "Which evaluation decides failure: paper or exact");

    auto* fig1 = sub(Subcommand::fig1, "P_2 over the alpha3 plane, alpha1 = alpha2 = lambda = 1");
    fig1->add_option("--re", raw.re, "Re(alpha3) grid start:step:end");
    fig1->add_option("--im", raw.im, "Im(alpha3) grid start:step:end");

    auto* wig = sub(Subcommand::wigner, "Wigner function at one phase-space point");
    wig->add_option("--lambda", raw.lambda, "Squeezing parameter");
    wig->add_option("--alpha", raw.alpha, kAlphaHelp);
    wig->add_option("--q", raw.q, "q1,q2,q3");
    wig->add_option("--p", raw.p, "p1,p2,p3");

    auto* bell = sub(Subcommand::bell, "B(3) along the one-parameter displacement family");
    bell->add_option("--lambda", raw.lambda, "Squeezing parameter");
    bell->add_option("--alpha", raw.alpha, kAlphaHelp + std::string(" (default 0.4,0.5,0.6)"));
    bell->add_option("--b", raw.b, "b grid start:step:end");
    bell->add_flag("--optimize", config.optimize, "Heuristic local search over all twelve displacement reals");

    auto* fig2 = sub(Subcommand::fig2, "max over b of B(3) against lambda");
    fig2->add_option("--lambda", raw.lambda, "lambda grid start:step:end");
    fig2->add_option("--b", raw.b, "b grid start:step:end");
    fig2->add_option("--alpha", raw.alpha, kAlphaHelp + std::string(" (default 0.4,0.5,0.6)"));

    auto* oracle = sub(Subcommand::oracle_check, "Truncated Fock-space value against the analytic one");
    oracle->add_option("--quantity", config.quantity, "var_x3, var_y3, vacuum_amplitude, mean_power, parity, norm or b3");
    oracle->add_option("--lambda", raw.lambda, "Squeezing parameter");
    oracle->add_option("--alpha", raw.alpha, kAlphaHelp);
    oracle->add_option("--cutoffs", raw.cutoffs, "Comma-separated increasing cutoffs");
    oracle->add_option("--k", config.k, "Order for mean_power");
    oracle->add_option("--q", raw.q, "Displacement point for parity, q1,q2,q3");
    oracle->add_option("--p", raw.p, "Displacement point for parity, p1,p2,p3");
    oracle->add_option("--b", raw.b, "Displacement size for b3");

    sub(Subcommand::errata, "Formula misprints with numeric evidence");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return trimode::cli::kExitInvalid;
    }

    for (const auto& [s, kind] : kinds)
        if (s->parsed()) config.subcommand = kind;
    config.format = format == "json" ? trimode::cli::OutputFormat::json : trimode::cli::OutputFormat::csv;
    if (!out_path.empty()) config.out_path = out_path;
    try {
        apply(raw, config);
    } catch (const trimode::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << '\n';
        return trimode::cli::kExitInvalid;
    }
    return trimode::cli::run(config, std::cout, std::cerr);
}
