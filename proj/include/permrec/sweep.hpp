#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permrec/bounds.hpp"
#include "permrec/sensing.hpp"
#include "permrec/solvers.hpp"

namespace permrec {

enum class SolverChoice { Oracle, Admm, Both };

std::string solver_label(SolverChoice s);
SolverChoice parse_solver(const std::string& text);

/// Grid description for a Monte Carlo sweep: the cell list is the cartesian
/// product n x p x m x h x snr in that nesting order.
struct SweepSpec {
    std::vector<std::size_t> n_list;
    std::vector<std::size_t> p_list;
    std::vector<std::size_t> m_list;
    std::vector<std::size_t> h_list;
    std::vector<double> snr_list;
    Spectrum spectrum;
    double sigma_sq = 1.0;
    std::size_t trials = 1;
    SolverChoice solver = SolverChoice::Oracle;
    std::uint64_t master_seed = 1;
    AdmmConfig admm;
    std::string output_path;  // empty: stdout
    std::size_t threads = 0;  // 0: hardware default

    void validate() const;
    std::size_t cell_count() const;

    /// Flat key=value text, '#' comments, repeated keys forming lists;
    /// snr_logspace = lo,hi,points expands to a log-spaced snr list.
    static SweepSpec parse_config(const std::string& text);
};

/// One grid cell with its empirical recovery statistics and axis transforms.
struct SweepResult {
    std::size_t n, p, m, h;
    double snr;
    double sigma_sq;
    std::string spectrum_label;
    std::string solver;
    std::size_t trials;
    double recovery_rate;
    double mean_hamming;
    double axis_snr;
    double axis_logdet_over_logn;
    double axis_logmsnr_over_logn;
    double wall_time_sec;  // informational; excluded from the DSV so output
                           // stays byte-identical across schedules
};

struct TrialOutcome {
    bool recovered;
    std::size_t hamming;
};

/// One seeded trial: generate, solve, compare against the planted
/// permutation. The stream is derived from (master_seed, cell, trial), so
/// identical indices reproduce bitwise identical instances and outcomes.
TrialOutcome run_trial(const ModelParams& params, SolverChoice solver,
                       const AdmmConfig& admm, std::uint64_t master_seed,
                       std::uint64_t cell_index, std::uint64_t trial_index);

/// Full grid evaluation. Trials run concurrently; results are reduced in
/// deterministic grid order regardless of scheduling. `solver` Both expands
/// to one result row per solver per cell. On a trial failure the sweep
/// aborts with the offending seed in the message; if `partial_out` is given
/// it receives the rows of every cell that had finished, in grid order.
std::vector<SweepResult> run_sweep(const SweepSpec& spec,
                                   std::vector<SweepResult>* partial_out = nullptr);

/// Comma-separated table with a header row; %.17g value formatting.
std::string sweep_results_dsv(const std::vector<SweepResult>& results);

/// Table of required snr values: rows over rho_list, columns over c_list.
/// Entries >= 0.005 print with two decimals, smaller ones in scientific form.
std::string emit_table2(std::size_t n, const std::vector<double>& rho_list,
                        const std::vector<double>& c_list);

std::string format_table2_value(double v);

}  // namespace permrec
