#pragma once

// Monte Carlo harness: threshold sweeps over (n, c) with p = c log n / n^2,
// isolated-vertex experiments, and comparative statistics for the union of
// matchings versus the pairing model.
//
// Every trial draws from Rng::derive(seed, cell, trial) and outcomes are
// reduced in trial order, so results do not depend on the worker count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <nlohmann/json.hpp>

#include "hypercore.hpp"
#include "reduce.hpp"
#include "rng.hpp"
#include "sample.hpp"

namespace loosehc {

/// p = min(1, c ln n / n^2).
inline double p_from_c(int n, double c) {
    const double nn = static_cast<double>(n);
    return std::min(1.0, c * std::log(nn) / (nn * nn));
}

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence = 0.95) {
    if (trials == 0) return {0.0, 1.0};
    if (successes > trials) throw std::invalid_argument("successes exceed trials");
    if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must lie in (0,1)");
    const double z = boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + confidence / 2.0);
    const double nt = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / nt;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nt;
    const double centre = (phat + z2 / (2.0 * nt)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
    Interval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
    // guard rounding at the extremes so the point estimate stays inside
    out.low = std::min(out.low, phat);
    out.high = std::max(out.high, phat);
    return out;
}

enum class SweepMethod { exact, pipeline };

inline const char* to_string(SweepMethod m) { return m == SweepMethod::exact ? "exact" : "pipeline"; }

struct SweepSpec {
    std::vector<int> ns = {8, 12, 16};
    std::vector<double> cs = {0.5, 1, 2, 4, 8, 16};
    int r = 4;
    int trials = 200;
    SweepMethod method = SweepMethod::exact;
    std::uint64_t seed = 1;
    double confidence = 0.95;
    int workers = 1;
    ExactLooseOptions oracle{};
    PipelineOptions pipeline{};

    /// Throws std::invalid_argument describing the first problem.
    void validate() const {
        if (ns.empty() || cs.empty()) throw std::invalid_argument("sweep grid is empty");
        for (int n : ns) {
            if (n < 8 || n % 4 != 0) throw std::invalid_argument("sweep n=" + std::to_string(n) + " must be divisible by 4 and >= 8");
            if (method == SweepMethod::exact && n > std::min(oracle.cap, detail::kLooseHardCap))
                throw std::invalid_argument("n=" + std::to_string(n) + " exceeds the exact oracle cap " + std::to_string(oracle.cap));
            if (method == SweepMethod::pipeline && pipeline.solver == SolverChoice::exact &&
                n / 2 > std::min(pipeline.rainbow_caps.cap, detail::kRainbowHardCap))
                throw std::invalid_argument("n=" + std::to_string(n) + " exceeds the exact pipeline cap; use the heuristic solver");
        }
        for (double c : cs)
            if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("sweep c values must be positive");
        if (trials < 1) throw std::invalid_argument("trials must be >= 1");
        if (r < 1) throw std::invalid_argument("r must be >= 1");
        if (workers < 1) throw std::invalid_argument("workers must be >= 1");
        if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must lie in (0,1)");
    }
};

struct SweepCell {
    int n = 0;
    double c = 0.0;
    double p = 0.0;
    int trials = 0;
    int successes = 0;
    double freq = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    SweepMethod method = SweepMethod::exact;
    std::uint64_t seed = 0;
    double mean_runtime = 0.0;  ///< seconds per trial; not serialized
};

struct SweepResult {
    std::vector<SweepCell> cells;  ///< n-major, then c, in grid order

    const SweepCell& at(int n, double c) const {
        for (const SweepCell& cell : cells)
            if (cell.n == n && cell.c == c) return cell;
        throw std::out_of_range("no sweep cell for n=" + std::to_string(n));
    }
};

namespace detail {

/// Runs fn(i) for i in [0, count) on `workers` threads with a static contiguous partition.
template <typename Fn>
void parallel_for(int count, int workers, Fn&& fn) {
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const int lo = static_cast<int>(static_cast<std::int64_t>(count) * w / workers);
        const int hi = static_cast<int>(static_cast<std::int64_t>(count) * (w + 1) / workers);
        pool.emplace_back([&, lo, hi, w] {
            try {
                for (int i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace detail

/// Outcome of one sweep trial.
inline bool sweep_trial(const SweepSpec& spec, int n, double p, Rng& rng) {
    if (spec.method == SweepMethod::exact) {
        const Hypergraph3 h = sample_h3(n, p, rng);
        return exact_loose_hamilton(h, spec.oracle).has_value();
    }
    return run_pipeline(n, p, spec.r, rng, spec.pipeline).success;
}

inline SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepResult result;
    std::uint64_t cell_index = 0;
    for (int n : spec.ns) {
        for (double c : spec.cs) {
            SweepCell cell;
            cell.n = n;
            cell.c = c;
            cell.p = p_from_c(n, c);
            cell.trials = spec.trials;
            cell.method = spec.method;
            cell.seed = spec.seed;
            std::vector<char> outcome(static_cast<std::size_t>(spec.trials), 0);
            std::vector<double> runtime(static_cast<std::size_t>(spec.trials), 0.0);
            detail::parallel_for(spec.trials, spec.workers, [&](int t) {
                const auto start = std::chrono::steady_clock::now();
                Rng rng = Rng::derive(spec.seed, cell_index, static_cast<std::uint64_t>(t));
                outcome[static_cast<std::size_t>(t)] = sweep_trial(spec, n, cell.p, rng) ? 1 : 0;
                runtime[static_cast<std::size_t>(t)] =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            });
            for (int t = 0; t < spec.trials; ++t) {
                cell.successes += outcome[static_cast<std::size_t>(t)];
                cell.mean_runtime += runtime[static_cast<std::size_t>(t)];
            }
            cell.mean_runtime /= spec.trials;
            cell.freq = static_cast<double>(cell.successes) / cell.trials;
            const Interval ci = wilson_interval(static_cast<std::uint64_t>(cell.successes),
                                                static_cast<std::uint64_t>(cell.trials), spec.confidence);
            cell.ci_low = ci.low;
            cell.ci_high = ci.high;
            result.cells.push_back(cell);
            ++cell_index;
        }
    }
    return result;
}

inline constexpr const char* kSweepCsvHeader = "n,c,p,trials,successes,freq,ci_low,ci_high,method,seed";

inline std::string to_csv(const SweepResult& result) {
    std::string out = std::string(kSweepCsvHeader) + "\n";
    for (const SweepCell& c : result.cells) {
        out += std::to_string(c.n) + "," + detail::format_number(c.c) + "," + detail::format_number(c.p) + "," +
               std::to_string(c.trials) + "," + std::to_string(c.successes) + "," + detail::format_number(c.freq) + "," +
               detail::format_number(c.ci_low) + "," + detail::format_number(c.ci_high) + "," + to_string(c.method) + "," +
               std::to_string(c.seed) + "\n";
    }
    return out;
}

inline nlohmann::json to_json(const SweepResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepCell& c : result.cells)
        rows.push_back({{"n", c.n},
                        {"c", c.c},
                        {"p", c.p},
                        {"trials", c.trials},
                        {"successes", c.successes},
                        {"freq", c.freq},
                        {"ci_low", c.ci_low},
                        {"ci_high", c.ci_high},
                        {"method", to_string(c.method)},
                        {"seed", c.seed}});
    return rows;
}

/// c value where the success frequency first reaches 1/2, by linear
/// interpolation in c between adjacent grid points; NaN if never reached.
inline double crossing_c(const SweepResult& result, int n) {
    const SweepCell* prev = nullptr;
    for (const SweepCell& cell : result.cells) {
        if (cell.n != n) continue;
        if (cell.freq >= 0.5) {
            if (!prev) return cell.c;
            const double t = (0.5 - prev->freq) / (cell.freq - prev->freq);
            return prev->c + t * (cell.c - prev->c);
        }
        prev = &cell;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

struct IsolatedRow {
    int n = 0;
    double c = 0.0;
    double p = 0.0;
    int trials = 0;
    double mean = 0.0;       ///< empirical mean isolated-vertex count
    double expected = 0.0;   ///< n (1-p)^C(n-1,2)
    double std_error = 0.0;  ///< exact standard deviation of the sample mean
    double z = 0.0;          ///< (mean - expected) / std_error
    double any_isolated = 0.0;  ///< empirical Pr(at least one isolated vertex)
};

inline std::vector<IsolatedRow> isolated_experiment(const std::vector<int>& ns, const std::vector<double>& cs, int trials,
                                                    std::uint64_t seed, int workers = 1) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    std::vector<IsolatedRow> rows;
    std::uint64_t cell_index = 0;
    for (int n : ns) {
        if (n < 3) throw std::invalid_argument("isolated experiment needs n >= 3");
        for (double c : cs) {
            if (!(c >= 0.0)) throw std::invalid_argument("c must be non-negative");
            IsolatedRow row;
            row.n = n;
            row.c = c;
            row.p = p_from_c(n, c);
            row.trials = trials;
            std::vector<int> counts(static_cast<std::size_t>(trials), 0);
            detail::parallel_for(trials, workers, [&](int t) {
                Rng rng = Rng::derive(seed, cell_index, static_cast<std::uint64_t>(t));
                counts[static_cast<std::size_t>(t)] = static_cast<int>(isolated_vertices(sample_h3(n, row.p, rng)).size());
            });
            double sum = 0.0;
            int any = 0;
            for (int k : counts) {
                sum += k;
                any += k > 0;
            }
            row.mean = sum / trials;
            row.any_isolated = static_cast<double>(any) / trials;
            row.expected = expected_isolated(n, row.p);
            row.std_error = std::sqrt(std::max(0.0, variance_isolated(n, row.p)) / trials);
            if (row.std_error > 0.0) row.z = (row.mean - row.expected) / row.std_error;
            else row.z = std::abs(row.mean - row.expected) < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
            rows.push_back(row);
            ++cell_index;
        }
    }
    return rows;
}

/// Sum over vertex pairs of (multiplicity - 1); loops excluded.
inline std::size_t parallel_edge_count(const ColoredMultigraph& g) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (const ColoredEdge& e : g.edges())
        if (!e.is_loop()) pairs.emplace_back(e.u, e.v);
    std::sort(pairs.begin(), pairs.end());
    const auto distinct = static_cast<std::size_t>(std::unique(pairs.begin(), pairs.end()) - pairs.begin());
    std::size_t loops = 0;
    for (const ColoredEdge& e : g.edges()) loops += e.is_loop();
    return g.edge_count() - loops - distinct;
}

/// Triangles counted with edge multiplicity.
inline std::uint64_t triangle_count(const ColoredMultigraph& g) {
    const int V = g.vertex_count();
    std::vector<std::vector<std::uint32_t>> mult(static_cast<std::size_t>(V) + 1, std::vector<std::uint32_t>(static_cast<std::size_t>(V) + 1, 0));
    for (const ColoredEdge& e : g.edges())
        if (!e.is_loop()) {
            ++mult[e.u][e.v];
            ++mult[e.v][e.u];
        }
    std::uint64_t total = 0;
    for (int a = 1; a <= V; ++a)
        for (int b = a + 1; b <= V; ++b) {
            if (!mult[a][b]) continue;
            for (int c = b + 1; c <= V; ++c)
                total += static_cast<std::uint64_t>(mult[a][b]) * mult[b][c] * mult[a][c];
        }
    return total;
}

struct ModelSummary {
    std::string model;
    int samples = 0;
    bool all_regular = true;
    double parallel_mean = 0.0;
    double parallel_var = 0.0;
    double triangle_mean = 0.0;
    double triangle_var = 0.0;
    double hamiltonian_freq = std::numeric_limits<double>::quiet_NaN();  ///< NaN when not computed
    std::vector<std::uint64_t> parallel_histogram;  ///< index = parallel-edge count
};

struct ContiguityReport {
    int vertex_count = 0;
    int r = 0;
    ModelSummary union_of_matchings;
    ModelSummary pairing;
};

inline constexpr int kHamiltonProbeMaxVertices = 16;

/// Side-by-side statistics of Γ_{2r} and the pairing-model G_{2r}; no verdict.
inline ContiguityReport contiguity_probe(int vertex_count, int r, int trials, std::uint64_t seed) {
    if (vertex_count < 2 || vertex_count % 2 != 0) throw std::invalid_argument("contiguity probe needs an even vertex count");
    if (trials < 1 || r < 1) throw std::invalid_argument("trials and r must be >= 1");
    ContiguityReport rep;
    rep.vertex_count = vertex_count;
    rep.r = r;
    const bool ham = vertex_count <= kHamiltonProbeMaxVertices;
    for (int model = 0; model < 2; ++model) {
        ModelSummary s;
        s.model = model == 0 ? "union_of_matchings" : "pairing";
        s.samples = trials;
        double ps = 0, ps2 = 0, ts = 0, ts2 = 0;
        int hams = 0;
        for (int t = 0; t < trials; ++t) {
            Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(model), static_cast<std::uint64_t>(t));
            const ColoredMultigraph g =
                model == 0 ? sample_union_matchings(vertex_count, r, rng) : sample_pairing_regular(vertex_count, 2 * r, rng);
            s.all_regular = s.all_regular && g.is_regular(2 * r);
            const auto par = parallel_edge_count(g);
            const auto tri = static_cast<double>(triangle_count(g));
            if (s.parallel_histogram.size() <= par) s.parallel_histogram.resize(par + 1, 0);
            ++s.parallel_histogram[par];
            ps += static_cast<double>(par);
            ps2 += static_cast<double>(par) * static_cast<double>(par);
            ts += tri;
            ts2 += tri * tri;
            if (ham && is_hamiltonian(g)) ++hams;
        }
        s.parallel_mean = ps / trials;
        s.parallel_var = ps2 / trials - s.parallel_mean * s.parallel_mean;
        s.triangle_mean = ts / trials;
        s.triangle_var = ts2 / trials - s.triangle_mean * s.triangle_mean;
        if (ham) s.hamiltonian_freq = static_cast<double>(hams) / trials;
        (model == 0 ? rep.union_of_matchings : rep.pairing) = std::move(s);
    }
    return rep;
}

inline std::string to_text(const ContiguityReport& rep) {
    auto fmt = [](double v) { return std::isnan(v) ? std::string("-") : detail::format_number(v); };
    std::string out = "statistic," + rep.union_of_matchings.model + "," + rep.pairing.model + "\n";
    const ModelSummary& a = rep.union_of_matchings;
    const ModelSummary& b = rep.pairing;
    out += "vertices," + std::to_string(rep.vertex_count) + "," + std::to_string(rep.vertex_count) + "\n";
    out += "degree," + std::to_string(2 * rep.r) + "," + std::to_string(2 * rep.r) + "\n";
    out += "samples," + std::to_string(a.samples) + "," + std::to_string(b.samples) + "\n";
    out += std::string("all_regular,") + (a.all_regular ? "yes" : "no") + "," + (b.all_regular ? "yes" : "no") + "\n";
    out += "parallel_mean," + fmt(a.parallel_mean) + "," + fmt(b.parallel_mean) + "\n";
    out += "parallel_var," + fmt(a.parallel_var) + "," + fmt(b.parallel_var) + "\n";
    out += "triangle_mean," + fmt(a.triangle_mean) + "," + fmt(b.triangle_mean) + "\n";
    out += "triangle_var," + fmt(a.triangle_var) + "," + fmt(b.triangle_var) + "\n";
    out += "hamiltonian_freq," + fmt(a.hamiltonian_freq) + "," + fmt(b.hamiltonian_freq) + "\n";
    return out;
}

inline std::string to_csv(const std::vector<IsolatedRow>& rows) {
    std::string out = "n,c,p,trials,mean_isolated,expected_isolated,std_error,z,pr_any_isolated\n";
    for (const IsolatedRow& r : rows)
        out += std::to_string(r.n) + "," + detail::format_number(r.c) + "," + detail::format_number(r.p) + "," +
               std::to_string(r.trials) + "," + detail::format_number(r.mean) + "," + detail::format_number(r.expected) + "," +
               detail::format_number(r.std_error) + "," + detail::format_number(r.z) + "," + detail::format_number(r.any_isolated) +
               "\n";
    return out;
}

}  // namespace loosehc
