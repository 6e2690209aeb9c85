// Command-line front end: graph queries (components / orient / cores),
// Monte Carlo experiments (sweep / gap / loose / rounds / compare), and the
// analytic constant tables. Seeds come from --seed, falling back to the
// RIGIDITY_SEED environment variable, then to 1.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rigidity/analytics.hpp"
#include "rigidity/cores.hpp"
#include "rigidity/engine.hpp"
#include "rigidity/graph_io.hpp"
#include "rigidity/harness.hpp"
#include "rigidity/pebble.hpp"
#include "rigidity/random_models.hpp"

namespace {

using namespace rigidity;

constexpr int kCheckFailure = 2;

std::uint64_t env_seed() {
    if (const char* s = std::getenv("RIGIDITY_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw std::runtime_error("RIGIDITY_SEED is not an integer");
        }
    }
    return 1;
}

std::string fmt_g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// Stream selection for experiment output: --out wins, else stdout.
class OutStream {
public:
    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

int cmd_components(const std::string& path) {
    const SimpleGraph g = load_graph_file(path);
    const ComponentDecomposition dec = rigid_components(g);
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
        std::cout << "component " << i << ":";
        for (Vertex v : dec.components[i]) std::cout << ' ' << v;
        std::cout << "\n";
    }
    return 0;
}

void print_orientation(const MultiGraph& g, const Orientation& o) {
    for (EdgeId e = 0; e < g.edge_slots(); ++e) {
        if (!g.alive(e) || !o.oriented(e)) continue;
        const auto& ed = g.edge(e);
        const Vertex tail = o.tail(e);
        const Vertex head = (tail == ed.u) ? ed.v : ed.u;
        std::cout << tail << " -> " << head << "\n";
    }
}

int cmd_orient_file(const std::string& path) {
    const SimpleGraph gs = load_graph_file(path);
    const MultiGraph g = MultiGraph::from_simple(gs);
    const TwoOrientationResult res = two_orientation(g);
    if (!res.ok) {
        std::cout << "not 2-orientable; dense set:";
        for (Vertex v : res.witness) std::cout << ' ' << v;
        std::cout << "\n";
        return 0;
    }
    print_orientation(g, res.orientation);
    return 0;
}

int cmd_orient_engine(Vertex n, double tau, std::uint32_t trials, std::uint64_t seed,
                      bool dump) {
    for (std::uint32_t t = 0; t < trials; ++t) {
        RngStream rng(seed, t);
        RngStream deg_rng = rng.substream(0);
        const DegreeSequence degrees = truncated_poisson_sequence(n, tau, 3, deg_rng);
        const EngineResult r = orient_core_full(degrees, rng.substream(1));
        nlohmann::ordered_json j;
        j["n"] = n;
        j["tau"] = tau;
        j["seed"] = seed;
        j["stream"] = t;
        j["loose_by_cause"] = {{"l1", r.stats.loose_l1},
                               {"l2", r.stats.loose_l2},
                               {"l3", r.stats.loose_l3},
                               {"cutoff", r.stats.loose_cutoff},
                               {"phase4", r.stats.loose_phase4}};
        j["max_round"] = r.stats.max_round;
        j["phase4_size"] = r.stats.phase4_size;
        j["phase4_success"] = r.stats.phase4_success;
        std::cout << j.dump() << "\n";
        if (dump) print_orientation(r.graph, r.orientation);
    }
    return 0;
}

int cmd_cores(const std::string& path, std::uint32_t k, bool three_plus_two) {
    const SimpleGraph g = load_graph_file(path);
    const CoreResult res = three_plus_two ? three_plus_two_core(g) : k_core(g, k);
    if (three_plus_two)
        std::cout << "core k=3+2 size=" << res.members.size() << "\n";
    else
        std::cout << "core k=" << k << " size=" << res.members.size() << "\n";
    for (Vertex v : res.members) std::cout << v << "\n";
    for (const Attachment& at : res.accretion)
        std::cout << at.v << " <- " << at.a << " " << at.b << "\n";
    return 0;
}

// --- experiment plumbing ---------------------------------------------------

struct ExperimentFlags {
    std::string config_path;
    std::vector<Vertex> n;
    std::vector<double> c;
    std::vector<double> tau;
    double c_min = 0, c_max = 0, c_step = 0.1;
    std::uint32_t trials = 0;
    std::optional<std::uint64_t> seed;
    std::uint32_t width = 0;
    std::string out;
    bool check = false;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f, bool with_tau) {
    cmd->add_option("--config", f.config_path, "JSON experiment config");
    cmd->add_option("--n", f.n, "vertex count grid");
    cmd->add_option("--c", f.c, "c grid (edge density c/n)");
    cmd->add_option("--c-min", f.c_min, "c grid start");
    cmd->add_option("--c-max", f.c_max, "c grid end (inclusive)");
    cmd->add_option("--c-step", f.c_step, "c grid step");
    if (with_tau) cmd->add_option("--tau", f.tau, "truncated-Poisson tau grid");
    cmd->add_option("--trials", f.trials, "trials per grid point");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--width", f.width, "worker threads");
    cmd->add_option("--out", f.out, "output CSV path (default stdout)");
    cmd->add_flag("--check", f.check, "verify acceptance thresholds; exit 2 on failure");
}

ExperimentConfig resolve_config(const ExperimentFlags& f, const CLI::App* cmd) {
    ExperimentConfig cfg;
    if (!f.config_path.empty()) cfg = load_config(f.config_path);
    if (cmd->count("--n")) cfg.n_grid = f.n;
    if (cmd->count("--c")) cfg.c_grid = f.c;
    if (cmd->count("--c-min")) {
        cfg.c_grid.clear();
        for (double c = f.c_min; c <= f.c_max + 1e-12; c += f.c_step) cfg.c_grid.push_back(c);
    }
    const CLI::Option* tau_opt = cmd->get_option_no_throw("--tau");
    if (tau_opt && tau_opt->count()) cfg.tau_grid = f.tau;
    if (cmd->count("--trials")) cfg.trials = f.trials;
    if (f.seed)
        cfg.seed = *f.seed;
    else if (f.config_path.empty())
        cfg.seed = env_seed();
    if (cmd->count("--width")) cfg.width = f.width;
    if (cmd->count("--out")) cfg.out = f.out;
    return cfg;
}

bool check_line(bool ok, const std::string& what) {
    std::cerr << (ok ? "[ok] " : "[check failed] ") << what << "\n";
    return ok;
}

int run_sweep_like(const ExperimentConfig& cfg, bool gap_mode, bool check) {
    const auto rows = gap_mode ? gap_histogram(cfg) : sweep_transition(cfg);
    OutStream os(cfg.out);
    write_sweep_csv(os.get(), rows);
    if (!check) return 0;

    const double c2 = analytics::c2_solve();
    bool ok = true;
    std::size_t mids = 0;
    for (const auto& r : rows) {
        mids += r.comps.mid;
        if (r.c < c2) {
            ok &= check_line(r.comps.largest <= 3,
                             "c=" + fmt_g(r.c) + " subcritical: largest component <= 3");
        } else {
            const bool big = r.core32 > 0 &&
                             r.comps.largest >= 0.8 * static_cast<double>(r.core32);
            ok &= check_line(big, "c=" + fmt_g(r.c) + " giant spans >= 0.8 of the (3+2)-core");
            ok &= check_line(r.comps.giant + r.comps.mid == 1,
                             "c=" + fmt_g(r.c) + " unique component of size >= 4");
        }
    }
    ok &= check_line(mids == 0, "no components with size in [4, 0.01 n]");
    return ok ? 0 : kCheckFailure;
}

int run_loose(const ExperimentConfig& cfg, bool check) {
    const auto rows = loose_scaling(cfg);
    OutStream os(cfg.out);
    write_loose_csv(os.get(), rows);
    if (!check) return 0;

    bool ok = true;
    for (const auto& r : rows) {
        ok &= check_line(r.loose_total ==
                             r.loose_l1 + r.loose_l2 + r.loose_l3 + r.loose_cutoff,
                         "loose cause breakdown sums to the total");
        if (r.processed > 0)
            ok &= check_line(r.lambda_hat < 1.0, "branching stays subcritical (lambda < 1)");
    }
    // trial-mean loose fraction must decrease along an ascending n grid
    std::map<double, std::map<Vertex, std::pair<double, std::size_t>>> acc;
    for (const auto& r : rows) {
        auto& cell = acc[r.param][r.n];
        cell.first += r.frac;
        cell.second += 1;
    }
    for (const auto& [param, by_n] : acc) {
        double prev = 2.0;
        for (const auto& [n, cell] : by_n) {
            const double mean = cell.first / cell.second;
            if (by_n.size() > 1)
                ok &= check_line(mean < prev, "param=" + fmt_g(param) + " n=" + std::to_string(n) +
                                                  " loose fraction decreasing in n");
            prev = mean;
        }
    }
    return ok ? 0 : kCheckFailure;
}

int run_rounds(const ExperimentConfig& cfg, bool check) {
    const auto rows = round_lengths(cfg);
    OutStream os(cfg.out);
    write_rounds_csv(os.get(), rows);
    if (!check) return 0;

    bool ok = true;
    std::map<double, std::map<Vertex, std::pair<double, std::size_t>>> acc;
    for (const auto& r : rows) {
        auto& cell = acc[r.param][r.n];
        cell.first += r.max_round / std::log(static_cast<double>(std::max<Vertex>(r.n, 2)));
        cell.second += 1;
    }
    for (const auto& [param, by_n] : acc) {
        if (by_n.size() < 2) continue;
        const auto first = *by_n.begin();
        const auto last = *by_n.rbegin();
        const double r0 = first.second.first / first.second.second;
        const double r1 = last.second.first / last.second.second;
        ok &= check_line(r1 <= 1.5 * r0, "param=" + fmt_g(param) +
                                             " max-round/ln n shows no growth trend");
    }
    return ok ? 0 : kCheckFailure;
}

int run_compare(const ExperimentConfig& cfg, bool check) {
    const auto rows = compare_analytic(cfg);
    OutStream os(cfg.out);
    write_compare_csv(os.get(), rows);
    if (!check) return 0;

    bool ok = true;
    for (const auto& r : rows) {
        if (r.core3_analytic > 0) {
            ok &= check_line(std::abs(r.core3_mean - r.core3_analytic) <= 0.01,
                             "c=" + fmt_g(r.c) + " 3-core fraction within 0.01 of analytic");
            ok &= check_line(std::abs(r.avgdeg_mean - r.avgdeg_analytic) <= 0.05,
                             "c=" + fmt_g(r.c) + " 3-core average degree within 0.05");
        } else {
            ok &= check_line(r.core3_mean <= 0.01, "c=" + fmt_g(r.c) + " 3-core empty");
        }
        if (r.q_analytic > 0)
            ok &= check_line(std::abs(r.core32_mean - r.q_analytic) <= 0.01,
                             "c=" + fmt_g(r.c) + " (3+2)-core fraction within 0.01 of q");
    }
    return ok ? 0 : kCheckFailure;
}

int run_analytic(double tau, std::uint32_t steps, bool check) {
    using namespace rigidity::analytics;
    const LambdaK l3 = lambda_k(3);
    const double c2 = c2_solve();
    const CoreFixedPoint fp = q_32core(c2 > 3.58804 ? c2 : 3.58804);
    const double ts = tau_star();

    std::cout << "name,value\n";
    std::cout << "lambda_3," << fmt_g(l3.lambda) << "\n";
    std::cout << "mu_at_lambda_3," << fmt_g(l3.mu_argmin) << "\n";
    std::cout << "core3_fraction_at_lambda_3," << fmt_g(core_fraction(3, l3.lambda + 1e-6))
              << "\n";
    std::cout << "c2," << fmt_g(c2) << "\n";
    std::cout << "q_at_c2," << fmt_g(fp.q) << "\n";
    std::cout << "tau_at_c2," << fmt_g(fp.tau) << "\n";
    std::cout << "tau_star," << fmt_g(ts) << "\n";
    std::cout << "lambda0_at_tau_c2," << fmt_g(lambda0(fp.tau)) << "\n";

    if (tau > 0) {
        const Phase3Curve curve = phase3_curve(tau);
        std::cout << "s,delta,a3,mu,lambda\n";
        for (std::uint32_t i = 0; i <= steps; ++i) {
            const double s = curve.s_star * i / steps;
            std::cout << fmt_g(s) << ',' << fmt_g(curve.delta(s)) << ',' << fmt_g(curve.a3(s))
                      << ',' << fmt_g(curve.mu(s)) << ',' << fmt_g(curve.lambda(s)) << "\n";
        }
    }
    if (!check) return 0;

    bool ok = true;
    ok &= check_line(std::abs(l3.lambda - 3.351) <= 1e-3, "lambda_3 = 3.351 +- 0.001");
    ok &= check_line(std::abs(core_fraction(3, l3.lambda + 1e-6) - 0.27) <= 5e-3,
                     "3-core fraction at lambda_3+ = 0.27 +- 0.005");
    ok &= check_line(std::abs(c2 - 3.58804) <= 1e-3, "c2 = 3.58804 +- 0.001");
    ok &= check_line(std::abs(q_32core(3.58804).q - 0.749154) <= 1e-5,
                     "q(3.58804) = 0.749154 +- 1e-5");
    ok &= check_line(std::abs(q_32core(3.58804).tau - 2.688) <= 1e-3,
                     "tau(3.58804) = 2.688 +- 0.001");
    ok &= check_line(std::abs(ts - 1.794) <= 1e-3, "root of lambda0 = 1 at 1.794 +- 0.001");
    // subcriticality of the round process over the supercritical c range
    bool sub = true;
    for (double c = c2 + 1e-3; c <= 10.0; c += 0.05)
        sub = sub && analytics::lambda0(q_32core(c).tau) < 1.0;
    ok &= check_line(sub, "lambda0(tau(c)) < 1 on [c2 + 1e-3, 10]");
    return ok ? 0 : kCheckFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"combinatorial rigidity toolkit"};
    app.require_subcommand(1);

    std::string graph_path;
    auto* sc_components =
        app.add_subcommand("components", "rigid component decomposition of a graph file");
    sc_components->add_option("graph-file", graph_path, "edge-list file")->required();

    auto* sc_orient = app.add_subcommand(
        "orient", "2-orientation of a graph file, or engine runs over random cores");
    std::string orient_path;
    Vertex orient_n = 10000;
    double orient_tau = 0;
    std::uint32_t orient_trials = 1;
    std::optional<std::uint64_t> orient_seed;
    bool orient_dump = false;
    sc_orient->add_option("graph-file", orient_path, "edge-list file");
    sc_orient->add_option("--tau", orient_tau, "run the orientation engine at this tau");
    sc_orient->add_option("--n", orient_n, "engine vertex count");
    sc_orient->add_option("--trials", orient_trials, "engine trials");
    sc_orient->add_option("--seed", orient_seed, "master seed");
    sc_orient->add_flag("--dump", orient_dump, "print each trial's orientation");

    auto* sc_cores = app.add_subcommand("cores", "k-core or (3+2)-core of a graph file");
    std::string cores_path;
    std::uint32_t cores_k = 3;
    bool three_plus_two = false;
    sc_cores->add_option("graph-file", cores_path, "edge-list file")->required();
    sc_cores->add_option("--k", cores_k, "core order");
    sc_cores->add_flag("--three-plus-two", three_plus_two, "(3+2)-core with accretion order");

    ExperimentFlags sweep_f, gap_f, loose_f, rounds_f, compare_f;
    auto* sc_sweep = app.add_subcommand("sweep", "rigidity transition sweep over c");
    add_experiment_flags(sc_sweep, sweep_f, false);
    auto* sc_gap = app.add_subcommand("gap", "component size-gap measurement");
    add_experiment_flags(sc_gap, gap_f, false);
    auto* sc_loose = app.add_subcommand("loose", "loose-vertex scaling");
    add_experiment_flags(sc_loose, loose_f, true);
    auto* sc_rounds = app.add_subcommand("rounds", "round-length statistics");
    add_experiment_flags(sc_rounds, rounds_f, true);
    auto* sc_compare = app.add_subcommand("compare", "empirical vs analytic core table");
    add_experiment_flags(sc_compare, compare_f, false);

    auto* sc_analytic = app.add_subcommand("analytic", "named constants and phase-3 curves");
    double analytic_tau = 0;
    std::uint32_t analytic_steps = 50;
    bool analytic_check = false;
    sc_analytic->add_option("--tau", analytic_tau, "emit the curve table at this tau");
    sc_analytic->add_option("--steps", analytic_steps, "curve table rows")
        ->check(CLI::PositiveNumber);
    sc_analytic->add_flag("--check", analytic_check, "verify the constants; exit 2 on failure");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc_components->parsed()) return cmd_components(graph_path);
        if (sc_orient->parsed()) {
            if (orient_tau > 0)
                return cmd_orient_engine(orient_n, orient_tau, orient_trials,
                                         orient_seed ? *orient_seed : env_seed(), orient_dump);
            if (orient_path.empty())
                throw std::runtime_error("orient: need a graph file or --tau");
            return cmd_orient_file(orient_path);
        }
        if (sc_cores->parsed()) return cmd_cores(cores_path, cores_k, three_plus_two);
        if (sc_sweep->parsed())
            return run_sweep_like(resolve_config(sweep_f, sc_sweep), false, sweep_f.check);
        if (sc_gap->parsed())
            return run_sweep_like(resolve_config(gap_f, sc_gap), true, gap_f.check);
        if (sc_loose->parsed())
            return run_loose(resolve_config(loose_f, sc_loose), loose_f.check);
        if (sc_rounds->parsed())
            return run_rounds(resolve_config(rounds_f, sc_rounds), rounds_f.check);
        if (sc_compare->parsed())
            return run_compare(resolve_config(compare_f, sc_compare), compare_f.check);
        if (sc_analytic->parsed())
            return run_analytic(analytic_tau, analytic_steps, analytic_check);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
