#include "rigidity/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "rigidity/analytics.hpp"
#include "rigidity/cores.hpp"
#include "rigidity/engine.hpp"
#include "rigidity/random_models.hpp"

namespace rigidity {

namespace {

std::string fmt_g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

void write_generated_line(std::ostream& out) {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[40];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    out << "# generated " << buf << "\n";
}

std::vector<Vertex> n_grid_or(const ExperimentConfig& cfg, Vertex fallback) {
    if (!cfg.n_grid.empty()) return cfg.n_grid;
    return {fallback};
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

// Degree sequence of the 3-core's induced subgraph, for handing to the
// orientation engine. Empty when the core is empty.
DegreeSequence core3_degrees(const SimpleGraph& g, const CoreResult& core) {
    const SimpleGraph sub = g.induced(core.members);
    DegreeSequence degrees(sub.n());
    for (Vertex v = 0; v < sub.n(); ++v)
        degrees[v] = static_cast<std::uint32_t>(sub.degree(v));
    return degrees;
}

TrialRecord sweep_trial(Vertex n, double c, std::uint64_t seed, std::uint64_t stream) {
    const auto t0 = std::chrono::steady_clock::now();
    RngStream rng(seed, stream);
    RngStream graph_rng = rng.substream(0);
    RngStream engine_rng = rng.substream(1);

    TrialRecord rec;
    rec.n = n;
    rec.c = c;
    rec.stream = stream;

    const SimpleGraph g = gnp(n, c, graph_rng);
    rec.edges = g.m();
    const CoreResult core3 = k_core(g, 3);
    rec.core3 = core3.members.size();
    rec.core32 = three_plus_two_core(g).members.size();

    const ComponentDecomposition dec = rigid_components(g);
    rec.comps = summarize_components(dec, 0.01 * static_cast<double>(n));

    const DegreeSequence degrees = core3_degrees(g, core3);
    if (!degrees.empty()) {
        const RoundStats st = simplified_run(degrees, engine_rng);
        rec.loose_l1 = st.loose_l1;
        rec.loose_l2 = st.loose_l2;
        rec.loose_l3 = st.loose_l3;
        rec.loose_cutoff = st.loose_cutoff;
        rec.max_round = st.max_round;
    }
    rec.wall_ms = ms_since(t0);
    return rec;
}

std::vector<TrialRecord> run_sweep_like(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("harness: trials must be >= 1");
    const std::vector<Vertex> ns = n_grid_or(cfg, 20000);
    if (cfg.c_grid.empty()) throw std::invalid_argument("harness: empty c grid");

    struct Point {
        Vertex n;
        double c;
    };
    std::vector<Point> points;
    for (Vertex n : ns)
        for (double c : cfg.c_grid) points.push_back({n, c});

    std::vector<TrialRecord> rows(points.size() * cfg.trials);
    parallel_for(rows.size(), cfg.width, [&](std::size_t i) {
        const Point& pt = points[i / cfg.trials];
        rows[i] = sweep_trial(pt.n, pt.c, cfg.seed, i);
    });
    return rows;
}

LooseRecord loose_trial(Vertex n, double param, bool tau_mode, std::uint32_t trial,
                        std::uint64_t seed, std::uint64_t stream) {
    const auto t0 = std::chrono::steady_clock::now();
    RngStream rng(seed, stream);
    RngStream setup_rng = rng.substream(0);
    RngStream engine_rng = rng.substream(1);

    LooseRecord rec;
    rec.tau_mode = tau_mode;
    rec.n = n;
    rec.param = param;
    rec.trial = trial;
    rec.stream = stream;

    DegreeSequence degrees;
    if (tau_mode) {
        degrees = truncated_poisson_sequence(n, param, 3, setup_rng);
    } else {
        const SimpleGraph g = gnp(n, param, setup_rng);
        degrees = core3_degrees(g, k_core(g, 3));
    }
    rec.core_n = degrees.size();
    if (!degrees.empty()) {
        const RoundStats st = simplified_run(degrees, engine_rng);
        rec.loose_l1 = st.loose_l1;
        rec.loose_l2 = st.loose_l2;
        rec.loose_l3 = st.loose_l3;
        rec.loose_cutoff = st.loose_cutoff;
        rec.loose_total = st.loose_l1 + st.loose_l2 + st.loose_l3 + st.loose_cutoff;
        rec.phase4_size = st.phase4_size;
        rec.rounds = st.rounds.size();
        rec.max_round = st.max_round;
        rec.processed = st.processed;
        if (st.processed > 0)
            rec.lambda_hat =
                static_cast<double>(st.three_to_two_hits) / static_cast<double>(st.processed);
        rec.frac = static_cast<double>(rec.loose_total) / static_cast<double>(rec.core_n);
        const double ln = std::log(static_cast<double>(n));
        rec.norm = static_cast<double>(rec.loose_total) /
                   (ln * ln * ln * std::sqrt(static_cast<double>(n)));
    }
    rec.wall_ms = ms_since(t0);
    return rec;
}

std::vector<LooseRecord> run_loose_like(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("harness: trials must be >= 1");
    const bool tau_mode = !cfg.tau_grid.empty();
    const std::vector<double>& params = tau_mode ? cfg.tau_grid : cfg.c_grid;
    if (params.empty()) throw std::invalid_argument("harness: empty c/tau grid");
    const std::vector<Vertex> ns = n_grid_or(cfg, 100000);

    struct Point {
        Vertex n;
        double p;
    };
    std::vector<Point> points;
    for (Vertex n : ns)
        for (double p : params) points.push_back({n, p});

    std::vector<LooseRecord> rows(points.size() * cfg.trials);
    parallel_for(rows.size(), cfg.width, [&](std::size_t i) {
        const Point& pt = points[i / cfg.trials];
        rows[i] = loose_trial(pt.n, pt.p, tau_mode, static_cast<std::uint32_t>(i % cfg.trials),
                              cfg.seed, i);
    });
    return rows;
}

} // namespace

void parallel_for(std::size_t count, std::uint32_t width,
                  const std::function<void(std::size_t)>& fn) {
    if (width <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const std::uint32_t w = static_cast<std::uint32_t>(std::min<std::size_t>(width, count));
    workers.reserve(w);
    for (std::uint32_t t = 0; t < w; ++t) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& th : workers) th.join();
}

ExperimentConfig parse_config_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    ExperimentConfig cfg;

    auto grab_list = [&](const char* key, auto push) {
        if (!j.contains(key)) return;
        const auto& v = j.at(key);
        if (v.is_array())
            for (const auto& x : v) push(x);
        else
            push(v);
    };

    if (j.contains("experiment")) cfg.experiment = j.at("experiment").get<std::string>();
    grab_list("n", [&](const nlohmann::json& x) { cfg.n_grid.push_back(x.get<Vertex>()); });
    grab_list("c", [&](const nlohmann::json& x) { cfg.c_grid.push_back(x.get<double>()); });
    grab_list("tau", [&](const nlohmann::json& x) { cfg.tau_grid.push_back(x.get<double>()); });
    if (j.contains("trials")) cfg.trials = j.at("trials").get<std::uint32_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("width")) cfg.width = j.at("width").get<std::uint32_t>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

ComponentSummary summarize_components(const ComponentDecomposition& dec, double eps_n) {
    ComponentSummary s;
    for (const auto& comp : dec.components) {
        const std::size_t sz = comp.size();
        if (sz == 1)
            ++s.size1;
        else if (sz == 2)
            ++s.size2;
        else if (sz == 3)
            ++s.size3;
        else if (static_cast<double>(sz) <= eps_n)
            ++s.mid;
        else
            ++s.giant;
        if (sz > s.largest) {
            s.second = s.largest;
            s.largest = sz;
        } else if (sz > s.second) {
            s.second = sz;
        }
    }
    return s;
}

std::vector<TrialRecord> sweep_transition(const ExperimentConfig& cfg) {
    return run_sweep_like(cfg);
}

std::vector<TrialRecord> gap_histogram(const ExperimentConfig& cfg) {
    return run_sweep_like(cfg);
}

std::vector<LooseRecord> loose_scaling(const ExperimentConfig& cfg) {
    return run_loose_like(cfg);
}

std::vector<LooseRecord> round_lengths(const ExperimentConfig& cfg) {
    return run_loose_like(cfg);
}

std::vector<CompareRecord> compare_analytic(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("harness: trials must be >= 1");
    if (cfg.c_grid.empty()) throw std::invalid_argument("harness: empty c grid");
    const Vertex n = n_grid_or(cfg, 100000).front();

    struct Sample {
        double core3 = 0, avgdeg = 0, core32 = 0;
    };
    std::vector<Sample> samples(cfg.c_grid.size() * cfg.trials);
    parallel_for(samples.size(), cfg.width, [&](std::size_t i) {
        const double c = cfg.c_grid[i / cfg.trials];
        RngStream rng(cfg.seed, i);
        const SimpleGraph g = gnp(n, c, rng);
        const CoreResult core3 = k_core(g, 3);
        Sample& s = samples[i];
        s.core3 = static_cast<double>(core3.members.size()) / n;
        if (!core3.members.empty()) {
            const SimpleGraph sub = g.induced(core3.members);
            s.avgdeg = 2.0 * static_cast<double>(sub.m()) / sub.n();
        }
        s.core32 = static_cast<double>(three_plus_two_core(g).members.size()) / n;
    });

    const double c2 = analytics::c2_solve();
    const double lambda3 = analytics::lambda_k(3).lambda;
    std::vector<CompareRecord> rows;
    for (std::size_t pi = 0; pi < cfg.c_grid.size(); ++pi) {
        CompareRecord r;
        r.c = cfg.c_grid[pi];
        r.n = n;
        r.trials = cfg.trials;
        double sum3 = 0, sum3sq = 0, sumdeg = 0, sum32 = 0;
        for (std::uint32_t t = 0; t < cfg.trials; ++t) {
            const Sample& s = samples[pi * cfg.trials + t];
            sum3 += s.core3;
            sum3sq += s.core3 * s.core3;
            sumdeg += s.avgdeg;
            sum32 += s.core32;
        }
        r.core3_mean = sum3 / cfg.trials;
        if (cfg.trials > 1) {
            const double var =
                std::max(0.0, (sum3sq - sum3 * sum3 / cfg.trials) / (cfg.trials - 1));
            r.core3_stderr = std::sqrt(var / cfg.trials);
        }
        r.avgdeg_mean = sumdeg / cfg.trials;
        r.core32_mean = sum32 / cfg.trials;
        if (r.c > lambda3) {
            r.core3_analytic = analytics::core_fraction(3, r.c);
            r.avgdeg_analytic = analytics::core3_avg_degree(r.c);
        }
        if (r.c > c2) {
            const auto fp = analytics::q_32core(r.c);
            r.q_analytic = fp.q;
            r.lambda0_analytic = analytics::lambda0(fp.tau);
        }
        rows.push_back(r);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<TrialRecord>& rows) {
    write_generated_line(out);
    out << "n,c,stream,edges,core3,core32,largest,second,size1,size2,size3,mid,"
           "loose_l1,loose_l2,loose_l3,loose_cutoff,max_round\n";
    for (const auto& r : rows) {
        out << r.n << ',' << fmt_g(r.c) << ',' << r.stream << ',' << r.edges << ',' << r.core3
            << ',' << r.core32 << ',' << r.comps.largest << ',' << r.comps.second << ','
            << r.comps.size1 << ',' << r.comps.size2 << ',' << r.comps.size3 << ','
            << r.comps.mid << ',' << r.loose_l1 << ',' << r.loose_l2 << ',' << r.loose_l3 << ','
            << r.loose_cutoff << ',' << r.max_round << "\n";
    }

    // aggregate fraction of the (3+2)-core spanned by the largest component
    struct Agg {
        Vertex n;
        double c;
        std::vector<double> fracs;
        std::size_t mids = 0;
    };
    std::vector<Agg> aggs;
    for (const auto& r : rows) {
        auto it = std::find_if(aggs.begin(), aggs.end(),
                               [&](const Agg& a) { return a.n == r.n && a.c == r.c; });
        if (it == aggs.end()) {
            aggs.push_back({r.n, r.c, {}, 0});
            it = aggs.end() - 1;
        }
        it->fracs.push_back(r.core32 > 0 ? static_cast<double>(r.comps.largest) / r.core32 : 0);
        it->mids += r.comps.mid;
    }
    for (const auto& a : aggs) {
        double sum = 0, sumsq = 0;
        for (double f : a.fracs) {
            sum += f;
            sumsq += f * f;
        }
        const double mean = sum / a.fracs.size();
        double sd = 0;
        if (a.fracs.size() > 1)
            sd = std::sqrt(std::max(0.0, (sumsq - sum * sum / a.fracs.size()) /
                                             (a.fracs.size() - 1)));
        out << "# n=" << a.n << " c=" << fmt_g(a.c) << " mean_fraction=" << fmt_g(mean)
            << " stddev=" << fmt_g(sd) << " mid_components=" << a.mids << "\n";
    }
}

void write_loose_csv(std::ostream& out, const std::vector<LooseRecord>& rows) {
    write_generated_line(out);
    out << "mode,n,param,trial,stream,core_n,loose_l1,loose_l2,loose_l3,loose_cutoff,"
           "loose_total,frac,norm,phase4_size,max_round,processed,lambda_hat\n";
    for (const auto& r : rows) {
        out << (r.tau_mode ? "tau" : "c") << ',' << r.n << ',' << fmt_g(r.param) << ','
            << r.trial << ',' << r.stream << ',' << r.core_n << ',' << r.loose_l1 << ','
            << r.loose_l2 << ',' << r.loose_l3 << ',' << r.loose_cutoff << ',' << r.loose_total
            << ',' << fmt_g(r.frac) << ',' << fmt_g(r.norm) << ',' << r.phase4_size << ','
            << r.max_round << ',' << r.processed << ',' << fmt_g(r.lambda_hat) << "\n";
    }
}

void write_rounds_csv(std::ostream& out, const std::vector<LooseRecord>& rows) {
    write_generated_line(out);
    out << "mode,n,param,trial,stream,core_n,rounds,processed,max_round,ratio\n";
    for (const auto& r : rows) {
        const double ratio =
            r.n > 1 ? r.max_round / std::log(static_cast<double>(r.n)) : 0.0;
        out << (r.tau_mode ? "tau" : "c") << ',' << r.n << ',' << fmt_g(r.param) << ','
            << r.trial << ',' << r.stream << ',' << r.core_n << ',' << r.rounds << ','
            << r.processed << ',' << r.max_round << ',' << fmt_g(ratio) << "\n";
    }
}

void write_compare_csv(std::ostream& out, const std::vector<CompareRecord>& rows) {
    write_generated_line(out);
    out << "c,n,trials,core3_analytic,core3_mean,core3_stderr,avgdeg_analytic,avgdeg_mean,"
           "q_analytic,core32_mean,lambda0_analytic\n";
    for (const auto& r : rows) {
        out << fmt_g(r.c) << ',' << r.n << ',' << r.trials << ',' << fmt_g(r.core3_analytic)
            << ',' << fmt_g(r.core3_mean) << ',' << fmt_g(r.core3_stderr) << ','
            << fmt_g(r.avgdeg_analytic) << ',' << fmt_g(r.avgdeg_mean) << ','
            << fmt_g(r.q_analytic) << ',' << fmt_g(r.core32_mean) << ','
            << fmt_g(r.lambda0_analytic) << "\n";
    }
    const double c2 = analytics::c2_solve();
    out << "# c2=" << fmt_g(c2) << " avg_degree_at_c2=" << fmt_g(analytics::core3_avg_degree(c2))
        << "\n";
}

} // namespace rigidity
