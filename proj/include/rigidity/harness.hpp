#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rigidity/graph.hpp"
#include "rigidity/pebble.hpp"

namespace rigidity {

// One experiment description. (seed, stream index) pins every random draw;
// stream indices enumerate (grid point, trial) pairs, so records are
// independent of the worker width.
struct ExperimentConfig {
    std::string experiment;        // sweep | gap | loose | rounds | compare
    std::vector<Vertex> n_grid;    // empty -> experiment default
    std::vector<double> c_grid;
    std::vector<double> tau_grid;  // loose/rounds: used instead of c when set
    std::uint32_t trials = 10;
    std::uint64_t seed = 1;
    std::uint32_t width = 1;
    std::string out;               // output path; empty means stdout
};

// JSON object with optional keys: experiment, n, c, tau, trials, seed,
// width, out. n/c/tau accept a scalar or an array.
ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Component-size bookkeeping. `mid` counts sizes in [4, eps_n]; `giant`
// counts sizes above eps_n.
struct ComponentSummary {
    std::size_t size1 = 0, size2 = 0, size3 = 0, mid = 0, giant = 0;
    std::size_t largest = 0, second = 0;
};
ComponentSummary summarize_components(const ComponentDecomposition& dec, double eps_n);

struct TrialRecord {
    Vertex n = 0;
    double c = 0;
    std::uint64_t stream = 0;
    std::size_t edges = 0, core3 = 0, core32 = 0;
    ComponentSummary comps;
    std::uint64_t loose_l1 = 0, loose_l2 = 0, loose_l3 = 0, loose_cutoff = 0;
    std::uint32_t max_round = 0;
    double wall_ms = 0; // measured per trial; kept out of the CSV rows
};

struct LooseRecord {
    bool tau_mode = false;
    Vertex n = 0;
    double param = 0; // the c or tau value
    std::uint32_t trial = 0;
    std::uint64_t stream = 0;
    std::size_t core_n = 0;
    std::uint64_t loose_l1 = 0, loose_l2 = 0, loose_l3 = 0, loose_cutoff = 0;
    std::uint64_t loose_total = 0;
    double frac = 0;       // loose_total / core_n
    double norm = 0;       // loose_total / (ln^3 n * sqrt n)
    std::size_t phase4_size = 0;
    std::size_t rounds = 0;
    std::uint32_t max_round = 0;
    std::uint64_t processed = 0;
    double lambda_hat = 0; // empirical children per processed vertex
    double wall_ms = 0;
};

struct CompareRecord {
    double c = 0;
    Vertex n = 0;
    std::uint32_t trials = 0;
    double core3_analytic = 0, core3_mean = 0, core3_stderr = 0;
    double avgdeg_analytic = 0, avgdeg_mean = 0;
    double q_analytic = 0, core32_mean = 0;
    double lambda0_analytic = 0;
};

// G(n, c/n) -> (3+2)-core -> rigid components, one record per (c, trial).
// Loose columns come from a simplified engine run on the 3-core degrees.
std::vector<TrialRecord> sweep_transition(const ExperimentConfig& cfg);

// Same pipeline, focused on the mid-size window; pair with the violation
// count in the CSV comments.
std::vector<TrialRecord> gap_histogram(const ExperimentConfig& cfg);

// Simplified engine runs over 3-cores (c mode) or truncated-Poisson
// sequences (tau mode), one record per (n, param, trial).
std::vector<LooseRecord> loose_scaling(const ExperimentConfig& cfg);
std::vector<LooseRecord> round_lengths(const ExperimentConfig& cfg);

// Empirical core measurements against the analytic predictions.
std::vector<CompareRecord> compare_analytic(const ExperimentConfig& cfg);

// CSV writers: one "# generated <UTC time>" line, a header row, then data
// rows with floats at 6 significant digits. Rows are byte-stable for a
// fixed config; sweep/gap writers append per-c aggregate comment lines.
void write_sweep_csv(std::ostream& out, const std::vector<TrialRecord>& rows);
void write_loose_csv(std::ostream& out, const std::vector<LooseRecord>& rows);
void write_rounds_csv(std::ostream& out, const std::vector<LooseRecord>& rows);
void write_compare_csv(std::ostream& out, const std::vector<CompareRecord>& rows);

// Runs fn(0..count-1) across `width` workers; any width yields the same
// per-index results.
void parallel_for(std::size_t count, std::uint32_t width,
                  const std::function<void(std::size_t)>& fn);

} // namespace rigidity
