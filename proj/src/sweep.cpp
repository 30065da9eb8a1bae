#include "permrec/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "permrec/errors.hpp"

namespace permrec {

std::string solver_label(SolverChoice s) {
    switch (s) {
        case SolverChoice::Oracle:
            return "oracle";
        case SolverChoice::Admm:
            return "admm";
        case SolverChoice::Both:
            return "both";
    }
    return "?";
}

SolverChoice parse_solver(const std::string& text) {
    if (text == "oracle") return SolverChoice::Oracle;
    if (text == "admm") return SolverChoice::Admm;
    if (text == "both") return SolverChoice::Both;
    throw ConfigError("unknown solver '" + text + "' (expected oracle|admm|both)");
}

void SweepSpec::validate() const {
    if (n_list.empty() || p_list.empty() || m_list.empty() || h_list.empty() ||
        snr_list.empty())
        throw ConfigError("SweepSpec: every grid axis needs at least one value");
    if (trials < 1) throw ConfigError("SweepSpec: trials >= 1 required");
    admm.validate();
    for (std::size_t n : n_list)
        for (std::size_t p : p_list)
            for (std::size_t m : m_list)
                for (std::size_t h : h_list)
                    for (double snr : snr_list) {
                        ModelParams params{n, p, m, h, snr, sigma_sq, spectrum};
                        params.validate();
                    }
}

std::size_t SweepSpec::cell_count() const {
    return n_list.size() * p_list.size() * m_list.size() * h_list.size() * snr_list.size();
}

namespace {

std::vector<double> logspace(double lo, double hi, std::size_t points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw ConfigError("snr_logspace: need 0 < lo < hi and points >= 2");
    std::vector<double> out(points);
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (std::size_t i = 0; i < points; ++i)
        out[i] = std::pow(10.0, llo + (lhi - llo) * static_cast<double>(i) /
                                    static_cast<double>(points - 1));
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

SweepSpec SweepSpec::parse_config(const std::string& text) {
    SweepSpec spec;
    bool have_spectrum = false;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "n") {
                spec.n_list.push_back(std::stoul(value));
            } else if (key == "p") {
                spec.p_list.push_back(std::stoul(value));
            } else if (key == "m") {
                spec.m_list.push_back(std::stoul(value));
            } else if (key == "h") {
                spec.h_list.push_back(std::stoul(value));
            } else if (key == "snr") {
                spec.snr_list.push_back(std::stod(value));
            } else if (key == "snr_logspace") {
                const auto parts = split_csv(value);
                if (parts.size() != 3)
                    throw ConfigError("snr_logspace expects lo,hi,points");
                for (double v :
                     logspace(std::stod(parts[0]), std::stod(parts[1]), std::stoul(parts[2])))
                    spec.snr_list.push_back(v);
            } else if (key == "spectrum") {
                spec.spectrum = Spectrum::parse(value);
                have_spectrum = true;
            } else if (key == "sigma_sq") {
                spec.sigma_sq = std::stod(value);
            } else if (key == "trials") {
                spec.trials = std::stoul(value);
            } else if (key == "solver") {
                spec.solver = parse_solver(value);
            } else if (key == "master_seed") {
                spec.master_seed = std::stoull(value);
            } else if (key == "rho") {
                spec.admm.rho = std::stod(value);
            } else if (key == "t_max") {
                spec.admm.t_max = std::stoul(value);
            } else if (key == "output") {
                spec.output_path = value;
            } else if (key == "threads") {
                spec.threads = std::stoul(value);
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_spectrum) spec.spectrum = Spectrum::full_rank_equal();
    spec.validate();
    return spec;
}

TrialOutcome run_trial(const ModelParams& params, SolverChoice solver,
                       const AdmmConfig& admm, std::uint64_t master_seed,
                       std::uint64_t cell_index, std::uint64_t trial_index) {
    if (solver == SolverChoice::Both)
        throw ConfigError("run_trial: pick one solver per trial");
    SeededRng rng(SeededRng::derive_seed(master_seed, cell_index, trial_index));
    const SensingInstance inst = generate(params, rng);
    const Permutation estimate =
        solver == SolverChoice::Oracle
            ? oracle_ml(inst.X, inst.Y, inst.B_star)
            : admm_solve(inst.X, inst.Y, admm).final;
    const std::size_t d = hamming(estimate, inst.Pi_star);
    return TrialOutcome{d == 0, d};
}

namespace {

struct CellPlan {
    ModelParams params;
    SolverChoice solver;
    std::uint64_t cell_index;  // deterministic seed index, shared per cell
};

}  // namespace

std::vector<SweepResult> run_sweep(const SweepSpec& spec,
                                   std::vector<SweepResult>* partial_out) {
    spec.validate();

    std::vector<CellPlan> plans;
    std::vector<SolverChoice> solvers;
    if (spec.solver == SolverChoice::Both)
        solvers = {SolverChoice::Oracle, SolverChoice::Admm};
    else
        solvers = {spec.solver};

    std::uint64_t cell_index = 0;
    for (std::size_t n : spec.n_list)
        for (std::size_t p : spec.p_list)
            for (std::size_t m : spec.m_list)
                for (std::size_t h : spec.h_list)
                    for (double snr : spec.snr_list) {
                        ModelParams params{n, p, m, h, snr, spec.sigma_sq, spec.spectrum};
                        // solver variants share the cell index, hence the
                        // same instances
                        for (SolverChoice s : solvers)
                            plans.push_back(CellPlan{params, s, cell_index});
                        ++cell_index;
                    }

    const std::size_t total_tasks = plans.size() * spec.trials;
    std::vector<TrialOutcome> outcomes(total_tasks);
    std::vector<char> task_done(total_tasks, 0);
    std::vector<double> plan_seconds(plans.size(), 0.0);

    std::size_t workers = spec.threads ? spec.threads : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min(workers, total_tasks);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure_message;
    std::mutex state_mutex;

    auto worker = [&]() {
        while (true) {
            const std::size_t task = next.fetch_add(1);
            if (task >= total_tasks || failed.load()) return;
            const std::size_t plan_idx = task / spec.trials;
            const std::size_t trial_idx = task % spec.trials;
            const CellPlan& plan = plans[plan_idx];
            try {
                const auto t0 = std::chrono::steady_clock::now();
                outcomes[task] = run_trial(plan.params, plan.solver, spec.admm,
                                           spec.master_seed, plan.cell_index, trial_idx);
                const double sec =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                        .count();
                std::lock_guard<std::mutex> lock(state_mutex);
                plan_seconds[plan_idx] += sec;
                task_done[task] = 1;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(state_mutex);
                if (!failed.exchange(true)) {
                    std::ostringstream os;
                    os << e.what() << " [master_seed=" << spec.master_seed
                       << " cell=" << plan.cell_index << " trial=" << trial_idx
                       << " stream_seed="
                       << SeededRng::derive_seed(spec.master_seed, plan.cell_index, trial_idx)
                       << "]";
                    failure_message = os.str();
                }
                return;
            }
        }
    };

    {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    const auto aggregate = [&](std::size_t pi) {
        const CellPlan& plan = plans[pi];
        std::size_t recovered = 0, hamming_sum = 0;
        for (std::size_t t = 0; t < spec.trials; ++t) {
            const TrialOutcome& o = outcomes[pi * spec.trials + t];
            recovered += o.recovered ? 1 : 0;
            hamming_sum += o.hamming;
        }
        const DenseMatrix b = make_b_star(plan.params);
        const double logn = std::log(static_cast<double>(plan.params.n));
        SweepResult r;
        r.n = plan.params.n;
        r.p = plan.params.p;
        r.m = plan.params.m;
        r.h = plan.params.h;
        r.snr = plan.params.snr;
        r.sigma_sq = plan.params.sigma_sq;
        r.spectrum_label = plan.params.spectrum.label();
        r.solver = solver_label(plan.solver);
        r.trials = spec.trials;
        r.recovery_rate = static_cast<double>(recovered) / static_cast<double>(spec.trials);
        r.mean_hamming =
            static_cast<double>(hamming_sum) / static_cast<double>(spec.trials);
        r.axis_snr = plan.params.snr;
        r.axis_logdet_over_logn = log_det_term(b, plan.params.sigma_sq) / logn;
        r.axis_logmsnr_over_logn =
            std::log(static_cast<double>(plan.params.m) * plan.params.snr) / logn;
        r.wall_time_sec = plan_seconds[pi];
        return r;
    };

    if (failed.load()) {
        if (partial_out) {
            partial_out->clear();
            for (std::size_t pi = 0; pi < plans.size(); ++pi) {
                bool complete = true;
                for (std::size_t t = 0; t < spec.trials && complete; ++t)
                    complete = task_done[pi * spec.trials + t] != 0;
                if (complete) partial_out->push_back(aggregate(pi));
            }
        }
        throw Error("sweep aborted: " + failure_message);
    }

    std::vector<SweepResult> results;
    results.reserve(plans.size());
    for (std::size_t pi = 0; pi < plans.size(); ++pi) results.push_back(aggregate(pi));
    return results;
}

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string sweep_results_dsv(const std::vector<SweepResult>& results) {
    std::ostringstream os;
    os << "n,p,m,h,snr,sigma_sq,spectrum,solver,trials,recovery_rate,mean_hamming,"
          "axis_snr,axis_logdet_over_logn,axis_logmsnr_over_logn\n";
    for (const SweepResult& r : results) {
        os << r.n << ',' << r.p << ',' << r.m << ',' << r.h << ',' << fmt17(r.snr) << ','
           << fmt17(r.sigma_sq) << ',' << r.spectrum_label << ',' << r.solver << ','
           << r.trials << ',' << fmt17(r.recovery_rate) << ',' << fmt17(r.mean_hamming)
           << ',' << fmt17(r.axis_snr) << ',' << fmt17(r.axis_logdet_over_logn) << ','
           << fmt17(r.axis_logmsnr_over_logn) << '\n';
    }
    return os.str();
}

std::string format_table2_value(double v) {
    char buf[64];
    if (v >= 0.005)
        std::snprintf(buf, sizeof(buf), "%.2f", v);
    else
        std::snprintf(buf, sizeof(buf), "%.2e", v);
    return buf;
}

std::string emit_table2(std::size_t n, const std::vector<double>& rho_list,
                        const std::vector<double>& c_list) {
    if (n < 2) throw ConfigError("emit_table2: n >= 2 required");
    std::ostringstream os;
    os << "rho";
    for (double c : c_list) os << ",c=" << c;
    os << '\n';
    for (double rho : rho_list) {
        os << rho;
        for (double c : c_list) os << ',' << format_table2_value(required_snr(n, rho, c));
        os << '\n';
    }
    return os.str();
}

}  // namespace permrec
