#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "permrec/bounds.hpp"
#include "permrec/errors.hpp"
#include "permrec/instance_io.hpp"
#include "permrec/sweep.hpp"

namespace {

using namespace permrec;

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 2;
constexpr int kExitNumerical = 3;

struct GenFlags {
    std::size_t n = 100, p = 10, m = 1, h = 0;
    double snr = 1.0, sigma_sq = 1.0;
    std::string spectrum = "rank1";
    std::uint64_t seed = 1;
};

void add_gen_flags(CLI::App* cmd, GenFlags& g) {
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--n", g.n, "measurements per MV");
    cmd->add_option("--p", g.p, "signal dimension");
    cmd->add_option("--m", g.m, "number of measurement vectors");
    cmd->add_option("--h", g.h, "Hamming displacement of the planted permutation");
    cmd->add_option("--snr", g.snr, "target signal-to-noise ratio");
    cmd->add_option("--sigma-sq", g.sigma_sq, "noise variance");
    cmd->add_option("--spectrum", g.spectrum, "rank1|fullrank|explicit:<csv>");
    cmd->add_option("--seed", g.seed, "instance seed");
}

ModelParams to_params(const GenFlags& g) {
    ModelParams params{g.n, g.p, g.m, g.h, g.snr, g.sigma_sq, Spectrum::parse(g.spectrum)};
    params.validate();
    return params;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << text;
}

std::vector<double> parse_double_csv(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw ConfigError("empty list '" + s + "'");
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Permutation recovery for multi-measurement unlabeled sensing"};
    app.require_subcommand(1);
    // long-form help only: --h is a model parameter
    app.set_help_flag("--help", "print help");

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "draw an instance and dump it to DSV files");
    GenFlags gen_flags;
    std::string gen_tag = "instance";
    add_gen_flags(gen_cmd, gen_flags);
    gen_cmd->add_option("--tag", gen_tag, "output file prefix");

    // solve-oracle / solve-admm
    auto* oracle_cmd = app.add_subcommand("solve-oracle", "oracle ML estimate (B* known)");
    GenFlags oracle_flags;
    std::string oracle_instance;
    add_gen_flags(oracle_cmd, oracle_flags);
    oracle_cmd->add_option("--instance", oracle_instance,
                           "read {tag}_X.dsv, {tag}_Y.dsv, {tag}_B.dsv instead of generating");

    auto* admm_cmd = app.add_subcommand("solve-admm", "ADMM estimate (B* unknown)");
    GenFlags admm_flags;
    std::string admm_instance, admm_trace_path;
    double admm_rho = 0.0;
    std::size_t admm_tmax = 100;
    add_gen_flags(admm_cmd, admm_flags);
    admm_cmd->add_option("--instance", admm_instance,
                         "read {tag}_X.dsv, {tag}_Y.dsv instead of generating");
    admm_cmd->add_option("--rho", admm_rho, "penalty parameter (0 = auto)");
    admm_cmd->add_option("--t-max", admm_tmax, "maximum iterations");
    admm_cmd->add_option("--trace", admm_trace_path,
                         "write per-iteration DSV rows: t,hamming_to_truth,residual");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the recovery/failure conditions");
    GenFlags bounds_flags;
    std::size_t bounds_D = 0, bounds_hmax = 0;
    TheoryConstants consts;
    add_gen_flags(bounds_cmd, bounds_flags);
    bounds_cmd->add_option("--D", bounds_D, "Hamming radius for approximate recovery");
    bounds_cmd->add_option("--h-max", bounds_hmax,
                           "displacement cap for the constrained estimator (0 = n/(8r))");
    bounds_cmd->add_option("--kappa", consts.kappa, "oracle achievability constant");
    bounds_cmd->add_option("--alpha0", consts.alpha0, "small-ball constant in (0,1)");
    bounds_cmd->add_option("--prop1-c", consts.prop1_c, "ML failure constant");
    bounds_cmd->add_option("--eps", consts.eps, "high-probability slack");
    bounds_cmd->add_option("--thm4-c0", consts.thm4_c0);
    bounds_cmd->add_option("--thm4-c1", consts.thm4_c1);
    bounds_cmd->add_option("--thm5-c0", consts.thm5_c0);
    bounds_cmd->add_option("--thm5-c1", consts.thm5_c1);
    bounds_cmd->add_option("--thm5-c2", consts.thm5_c2);
    bounds_cmd->add_option("--thm5-c3", consts.thm5_c3);
    bounds_cmd->add_option("--thm5-c4", consts.thm5_c4);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run a Monte Carlo grid from a config file");
    sweep_cmd->set_help_flag("--help", "print help");
    std::string sweep_config, sweep_output;
    std::size_t sweep_threads = 0;
    sweep_cmd->add_option("--config", sweep_config, "key=value config file")->required();
    sweep_cmd->add_option("--output", sweep_output, "override output path");
    sweep_cmd->add_option("--threads", sweep_threads, "override worker count");

    // table2
    auto* table_cmd = app.add_subcommand("table2", "required-snr table");
    table_cmd->set_help_flag("--help", "print help");
    std::size_t table_n = 1000;
    std::string table_rho = "1,10,20,50,100", table_c = "1,2,3,4,5,6";
    table_cmd->add_option("--n", table_n, "number of measurements");
    table_cmd->add_option("--rho", table_rho, "stable-rank values, csv");
    table_cmd->add_option("--c", table_c, "threshold multipliers, csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadArgs;
    }

    if (gen_cmd->parsed()) {
        const ModelParams params = to_params(gen_flags);
        SeededRng rng(gen_flags.seed);
        const SensingInstance inst = generate(params, rng);
        write_instance(gen_tag, inst);
        std::cout << "wrote " << gen_tag << "_{X,B,W,Y}.dsv and " << gen_tag << "_Pi.txt\n";
        return kExitOk;
    }

    if (oracle_cmd->parsed() || admm_cmd->parsed()) {
        const bool is_oracle = oracle_cmd->parsed();
        const GenFlags& flags = is_oracle ? oracle_flags : admm_flags;
        const std::string& tag = is_oracle ? oracle_instance : admm_instance;

        DenseMatrix x, y, b_star;
        std::optional<Permutation> truth;
        if (!tag.empty()) {
            x = read_matrix_dsv(tag + "_X.dsv");
            y = read_matrix_dsv(tag + "_Y.dsv");
            if (is_oracle) b_star = read_matrix_dsv(tag + "_B.dsv");
            std::ifstream probe(tag + "_Pi.txt");
            if (probe) truth = read_permutation_line(tag + "_Pi.txt");
        } else {
            const ModelParams params = to_params(flags);
            SeededRng rng(flags.seed);
            SensingInstance inst = generate(params, rng);
            x = std::move(inst.X);
            y = std::move(inst.Y);
            b_star = std::move(inst.B_star);
            truth = std::move(inst.Pi_star);
            std::cout << "seed=" << flags.seed << '\n';
        }

        Permutation estimate = Permutation::identity(x.rows());
        if (is_oracle) {
            estimate = oracle_ml(x, y, b_star);
        } else {
            AdmmConfig cfg;
            if (admm_rho > 0.0) cfg.rho = admm_rho;
            cfg.t_max = admm_tmax;
            const AdmmTrace trace = admm_solve(x, y, cfg);
            estimate = trace.final;
            std::cout << "iterations=" << trace.iterations_run
                      << "\nconverged=" << (trace.converged ? 1 : 0) << '\n';
            if (!admm_trace_path.empty()) {
                std::ostringstream os;
                os << "t,hamming_to_truth,residual\n";
                for (std::size_t t = 0; t < trace.iterations_run; ++t) {
                    os << t << ',';
                    if (truth)
                        os << hamming(trace.pi1_history[t], *truth);
                    else
                        os << -1;
                    os << ',' << fmt(trace.objective_history[t]) << '\n';
                }
                write_text(admm_trace_path, os.str());
            }
        }
        std::cout << "residual=" << fmt(residual(estimate, x, y)) << '\n';
        if (truth) {
            const std::size_t d = hamming(estimate, *truth);
            std::cout << "hamming_to_truth=" << d << "\nrecovered=" << (d == 0 ? 1 : 0)
                      << '\n';
        }
        std::cout << "permutation=" << estimate.to_line() << '\n';
        return kExitOk;
    }

    if (bounds_cmd->parsed()) {
        const ModelParams params = to_params(bounds_flags);
        if (params.n < 36)
            std::cerr << "warning: the achievability conditions assume n large "
                         "(n >= 36 at eps = 0.5); booleans below that are nominal\n";
        const DenseMatrix b = make_b_star(params);
        std::size_t h_max = bounds_hmax;
        if (h_max == 0) h_max = params.n / 8;  // largest radius the hypothesis admits at r=1
        const ThresholdReport rep = evaluate_thresholds(
            b, params.sigma_sq, params.n, params.p, params.m, bounds_D, h_max, consts);

        std::ostringstream kv;
        kv << "logdet=" << fmt(rep.logdet) << '\n'
           << "logdet_over_logn=" << fmt(rep.logdet_over_logn) << '\n'
           << "thm1_fails=" << rep.thm1_fails << '\n'
           << "cor1_fails_at_D=" << rep.cor1_fails_at_D << '\n'
           << "D=" << rep.D << '\n'
           << "minimax_dh_lower=" << fmt(rep.minimax_dh_lower) << '\n'
           << "prop1_fails=" << rep.prop1_fails << '\n'
           << "thm3_succeeds=" << rep.thm3_succeeds << '\n'
           << "thm4_succeeds=" << rep.thm4_succeeds << '\n'
           << "thm5_succeeds=" << rep.thm5_succeeds << '\n'
           << "h_max=" << h_max << '\n'
           << "kappa=" << fmt(consts.kappa) << '\n'
           << "alpha0=" << fmt(consts.alpha0) << '\n'
           << "prop1_c=" << fmt(consts.prop1_c) << '\n'
           << "eps=" << fmt(consts.eps) << '\n';
        std::cout << kv.str();

        std::cout << "logdet,logdet_over_logn,thm1_fails,cor1_fails_at_D,D,"
                     "minimax_dh_lower,prop1_fails,thm3_succeeds,thm4_succeeds,"
                     "thm5_succeeds\n"
                  << fmt(rep.logdet) << ',' << fmt(rep.logdet_over_logn) << ','
                  << rep.thm1_fails << ',' << rep.cor1_fails_at_D << ',' << rep.D << ','
                  << fmt(rep.minimax_dh_lower) << ',' << rep.prop1_fails << ','
                  << rep.thm3_succeeds << ',' << rep.thm4_succeeds << ','
                  << rep.thm5_succeeds << '\n';
        return kExitOk;
    }

    if (sweep_cmd->parsed()) {
        std::ifstream in(sweep_config);
        if (!in) throw ConfigError("cannot open config '" + sweep_config + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        SweepSpec spec = SweepSpec::parse_config(buffer.str());
        if (!sweep_output.empty()) spec.output_path = sweep_output;
        if (sweep_threads) spec.threads = sweep_threads;
        std::vector<SweepResult> partial;
        std::vector<SweepResult> results;
        try {
            results = run_sweep(spec, &partial);
        } catch (const Error&) {
            if (!partial.empty()) {
                write_text(spec.output_path, sweep_results_dsv(partial));
                std::cerr << "sweep: flushed " << partial.size()
                          << " completed cells before aborting\n";
            }
            throw;
        }
        write_text(spec.output_path, sweep_results_dsv(results));
        double total = 0.0;
        for (const auto& r : results) total += r.wall_time_sec;
        std::cerr << "sweep: " << results.size() << " cells, " << spec.trials
                  << " trials each, " << total << " s solver time\n";
        return kExitOk;
    }

    if (table_cmd->parsed()) {
        std::cout << emit_table2(table_n, parse_double_csv(table_rho),
                                 parse_double_csv(table_c));
        return kExitOk;
    }

    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const permrec::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArgs;
    } catch (const permrec::InfeasibleHamming& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArgs;
    } catch (const permrec::InvalidSpectrum& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArgs;
    } catch (const permrec::TooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArgs;
    } catch (const permrec::HypothesisViolated& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArgs;
    } catch (const permrec::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArgs;
    }
}
