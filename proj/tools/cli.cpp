// Copyright 2026 The chsh-stochastic Authors
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

#include "cli.hpp"

#include <omp.h>

#ifdef CHSH_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "chsh/causality.hpp"
#include "chsh/config.hpp"
#include "chsh/game.hpp"
#include "chsh/stochastic.hpp"
#include "chsh/tsirelson.hpp"

namespace chsh::cli {

namespace {

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << contents;
    f.flush();
    if (!f) throw IoError("failed writing '" + path + "'");
}

class Report {
   public:
    explicit Report(std::ostream& out) : out_(out) {}
    Report& add(const std::string& key, const std::string& value) {
        out_ << key << '=' << value << '\n';
        return *this;
    }
    Report& add(const std::string& key, double value) { return add(key, format_number(value)); }
    Report& add_int(const std::string& key, long long value) { return add(key, std::to_string(value)); }

   private:
    std::ostream& out_;
};

InputDistribution parse_inputs(const std::string& text) {
    std::array<double, 4> p{};
    std::stringstream ss(text);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 4) throw ConfigError("--inputs: expected exactly 4 comma-separated values");
        try {
            std::size_t used = 0;
            p[i] = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ConfigError("--inputs: cannot parse '" + item + "' as a number");
        }
        ++i;
    }
    if (i != 4) throw ConfigError("--inputs: expected exactly 4 comma-separated values");
    return InputDistribution(p);
}

std::pair<int, int> parse_dims(const std::string& text) {
    int a = 0;
    int b = 0;
    char comma = 0;
    std::stringstream ss(text);
    if (!(ss >> a >> comma >> b) || comma != ',' || !ss.eof()) {
        throw ConfigError("--dims: expected 'A,B', got '" + text + "'");
    }
    return {a, b};
}

const QuantumSetup* quantum_of(const StrategyConfig& cfg) {
    if (!cfg.strategy) return nullptr;
    return std::get_if<QuantumSetup>(&*cfg.strategy);
}

void add_score_lines(Report& report, const StrategyConfig& cfg, const InputDistribution& inputs) {
    const double score = expected_score(cfg.box, inputs);
    report.add("kind", cfg.kind);
    report.add("exact_score", score);
    report.add("exact_win_probability", win_probability(score));
    report.add("ns_check", is_no_signaling(cfg.box) ? "pass" : "fail");
    if (quantum_of(cfg)) report.add("bound_margin", kTsirelsonScore - std::abs(score));
}

void set_threads(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

struct Options {
    std::string config;
    std::string inputs;
    std::string out;
    std::string trace;
    std::string dims = "2,2";
    std::string tool;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    int restarts = 0;
    int threads = 0;
    double tol = 0.0;
    double ns_tol = kNoSignalingTol;
};

int cmd_score(const Options& o, std::ostream& out) {
    const StrategyConfig cfg = parse_strategy_config(read_file(o.config));
    const InputDistribution inputs = o.inputs.empty() ? InputDistribution::uniform() : parse_inputs(o.inputs);
    Report report(out);
    add_score_lines(report, cfg, inputs);
    return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    const StrategyConfig cfg = parse_strategy_config(read_file(o.config));
    if (!cfg.strategy) throw InvariantError("simulate: kind 'box' has no strategy to play");
    set_threads(o.threads);
    const SimulationResult sim = simulate_rounds(*cfg.strategy, o.n, o.seed);

    std::ostringstream csv;
    write_records_csv(csv, sim.records);
    write_file(o.out, csv.str());

    Report report(out);
    add_score_lines(report, cfg, InputDistribution::uniform());
    report.add_int("n_rounds", static_cast<long long>(sim.summary.n_rounds));
    report.add("seed", std::to_string(o.seed));
    report.add_int("wins", static_cast<long long>(sim.summary.wins));
    report.add("empirical_score", sim.summary.empirical_score);
    report.add("empirical_win_rate", sim.summary.empirical_win_rate);
    report.add("records", o.out);
    return kOk;
}

int cmd_audit(const Options& o, std::ostream& out) {
    const StrategyConfig cfg = parse_strategy_config(read_file(o.config));
    Report report(out);
    report.add("kind", cfg.kind);
    const auto witness = signaling_witness(cfg.box, o.ns_tol);
    report.add("ns_check", witness ? "fail" : "pass");
    if (witness) {
        const bool alice = witness->side == Side::Alice;
        std::ostringstream w;
        w << (alice ? "alice(q=" : "bob(r=") << witness->outcome << (alice ? ",x=" : ",y=")
          << witness->own_setting << (alice ? ",y=" : ",x=") << witness->other_setting
          << (alice ? ",y'=" : ",x'=") << witness->other_setting_alt << ')';
        report.add("ns_witness", w.str());
        report.add("ns_witness_gap", witness->gap);
    }
    const double score = expected_score(cfg.box);
    report.add("exact_score", score);
    report.add("exact_win_probability", win_probability(score));

    if (const QuantumSetup* setup = quantum_of(cfg)) {
        // The joint operation for every setting pair is a Kronecker product, so
        // each side's dynamics cannot depend on the other side's configuration.
        bool local = true;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                local = local && non_interacting(joint_from_unitary(tensor(setup->local(Side::Alice, x),
                                                                           setup->local(Side::Bob, y)),
                                                                    setup->dim_a(), setup->dim_b()));
        report.add("factorization", "A_x(x)B_y");
        report.add("local_operations_non_interacting", local ? "true" : "false");
        const double norm = spectral_norm_hermitian(chsh_operator(*setup));
        report.add("chsh_operator_norm", norm);
        report.add("operator_score", score_of_setup(*setup));
        report.add("bound_margin", kTsirelsonScore - std::abs(score));
    }
    return kOk;
}

int cmd_optimize(const Options& o, std::ostream& out) {
    const auto [da, db] = parse_dims(o.dims);
    OptimizeOptions opts;
    opts.dim_a = da;
    opts.dim_b = db;
    if (o.restarts > 0) opts.restarts = o.restarts;
    opts.seed = o.seed;
    if (o.tol > 0.0) opts.tol = o.tol;
    set_threads(o.threads);
    const OptimizeResult result = optimize(opts);

    if (!o.out.empty()) write_file(o.out, strategy_to_json(Strategy(result.setup)).dump(2) + "\n");
    if (!o.trace.empty()) {
        std::ostringstream csv;
        csv << "restart,score,best_so_far\n";
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < result.restart_scores.size(); ++r) {
            best = std::max(best, result.restart_scores[r]);
            csv << r << ',' << format_number(result.restart_scores[r]) << ',' << format_number(best) << '\n';
        }
        write_file(o.trace, csv.str());
    }

    Report report(out);
    report.add("dims", std::to_string(da) + "," + std::to_string(db));
    report.add_int("restarts", opts.restarts);
    report.add("seed", std::to_string(o.seed));
    report.add_int("best_restart", result.best_restart);
    report.add("exact_score", result.score);
    report.add("exact_win_probability", win_probability(result.score));
    report.add("bound_margin", kTsirelsonScore - std::abs(result.score));
    if (!o.out.empty()) report.add("setup", o.out);
    if (!o.trace.empty()) report.add("trace", o.trace);
    return kOk;
}

int cmd_process(const Options& o, std::ostream& out) {
    const nlohmann::json j = parse_json(read_file(o.config));
    if (!j.is_object()) throw ConfigError("matrix file: expected a JSON object");
    auto member = [&](const char* name) -> const nlohmann::json& {
        if (!j.contains(name)) throw ConfigError(std::string("field '") + name + "': missing");
        return j[name];
    };
    Report report(out);
    report.add("tool", o.tool);
    const double tol = o.tol > 0.0 ? o.tol : kDefaultDivisionTol;

    if (o.tool == "divide") {
        const StochasticMatrix total(real_matrix_from_json(member("total"), "total"));
        const StochasticMatrix first(real_matrix_from_json(member("first"), "first"));
        const DivisionResult d = divide_with_residual(total, first, tol);
        report.add("verdict", d.later ? "divisible" : "not_divisible");
        report.add("residual", d.residual);
        if (d.later) report.add("later", real_matrix_to_json(d.later->matrix()).dump());
    } else if (o.tool == "dilate") {
        const StochasticMatrix gamma(real_matrix_from_json(member("gamma"), "gamma"));
        DilationOptions opts;
        opts.tol = tol;
        opts.seed = o.seed;
        if (o.restarts > 0) opts.max_restarts = o.restarts;
        set_threads(o.threads);
        const DilationResult d = find_unitary_dilation(gamma, opts);
        report.add("verdict", d.unitary ? "found" : "not_found");
        if (d.unitary) {
            report.add_int("restart", d.restart);
            report.add("residual", max_abs(RealMatrix(squared_moduli(*d.unitary) - gamma.matrix())));
            report.add("unitary", complex_matrix_to_json(*d.unitary).dump());
        } else {
            report.add("residual", d.best_residual);
        }
    } else {
        const ComplexMatrix total = complex_matrix_from_json(member("u_total"), "u_total");
        const ComplexMatrix first = complex_matrix_from_json(member("u_first"), "u_first");
        const RealMatrix c = qcor(total, first);
        report.add("qcor", real_matrix_to_json(c).dump());
        report.add("max_abs_column_sum", c.colwise().sum().cwiseAbs().maxCoeff());
    }
    return kOk;
}

}  // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"CHSH game strategies, stochastic-process tools and Tsirelson-bound checks", "chsh"};
    app.require_subcommand(1);
    Options o;

    auto* score = app.add_subcommand("score", "Exact score and win probability of a strategy config");
    score->add_option("--config", o.config, "Strategy config (JSON)")->required();
    score->add_option("--inputs", o.inputs, "Input distribution \"p00,p01,p10,p11\"");

    auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo rounds");
    simulate->add_option("--config", o.config, "Strategy config (JSON)")->required();
    simulate->add_option("--n", o.n, "Number of rounds")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--seed", o.seed, "Random seed")->required();
    simulate->add_option("--out", o.out, "Record file (CSV)")->required();
    simulate->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");

    auto* audit = app.add_subcommand("audit", "No-signaling and locality audit");
    audit->add_option("--config", o.config, "Strategy or box config (JSON)")->required();
    audit->add_option("--tol", o.ns_tol, "No-signaling tolerance");

    auto* opt = app.add_subcommand("optimize", "Maximize the quantum score over local unitaries and states");
    opt->add_option("--dims", o.dims, "Local dimensions \"A,B\"");
    opt->add_option("--restarts", o.restarts, "Random restarts (default 100)")->check(CLI::PositiveNumber);
    opt->add_option("--seed", o.seed, "Random seed")->required();
    opt->add_option("--tol", o.tol, "Per-restart convergence tolerance");
    opt->add_option("--out", o.out, "Write the best setup as a quantum config");
    opt->add_option("--trace", o.trace, "Write per-restart scores (CSV)");
    opt->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");

    auto* process = app.add_subcommand("process", "Stochastic-matrix tools: divide, dilate, qcor");
    process->add_option("tool", o.tool, "divide | dilate | qcor")
        ->required()
        ->check(CLI::IsMember({"divide", "dilate", "qcor"}));
    process->add_option("--config", o.config, "Matrix file (JSON)")->required();
    process->add_option("--tol", o.tol, "Acceptance tolerance (default 1e-8)");
    process->add_option("--seed", o.seed, "Seed for dilation restarts");
    process->add_option("--restarts", o.restarts, "Dilation restarts (default 64)");
    process->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    }

    try {
        if (score->parsed()) return cmd_score(o, out);
        if (simulate->parsed()) return cmd_simulate(o, out);
        if (audit->parsed()) return cmd_audit(o, out);
        if (opt->parsed()) return cmd_optimize(o, out);
        return cmd_process(o, out);
    } catch (const ConfigError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const InvariantError& e) {
        err << "invariant violated: " << e.what() << '\n';
        return kInvariantError;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kIoError;
    }
}

}  // namespace chsh::cli
