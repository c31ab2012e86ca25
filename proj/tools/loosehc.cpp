// loosehc command-line front end.
//
// Exit status: 0 success / true, 1 verified-false or not found, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loosehc/loosehc.hpp"

namespace {

using namespace loosehc;

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::vector<int> n;
    std::optional<double> p;
    std::vector<double> c;
    int r = 4;
    int trials = 200;
    std::uint64_t seed = 1;
    std::string method;
    std::string format;
    std::string out;
    std::optional<int> cap;
    int workers = 1;
    std::string kind;
    std::string in;
    std::string cert;
    std::uint64_t budget = 0;
    double confidence = 0.95;
};

void banner(const std::string& command, const Options& o) {
    std::ostringstream os;
    os << "# loosehc " << LOOSEHC_VERSION << ' ' << command;
    if (!o.kind.empty()) os << " kind=" << o.kind;
    if (!o.n.empty()) {
        os << " n=";
        for (std::size_t i = 0; i < o.n.size(); ++i) os << (i ? "," : "") << o.n[i];
    }
    if (o.p) os << " p=" << *o.p;
    if (!o.c.empty()) {
        os << " c=";
        for (std::size_t i = 0; i < o.c.size(); ++i) os << (i ? "," : "") << o.c[i];
    }
    os << " r=" << o.r << " trials=" << o.trials << " seed=" << o.seed;
    if (!o.method.empty()) os << " method=" << o.method;
    if (o.cap) os << " cap=" << *o.cap;
    if (o.budget) os << " budget=" << o.budget;
    os << " workers=" << o.workers;
    if (!o.in.empty()) os << " in=" << o.in;
    if (!o.cert.empty()) os << " cert=" << o.cert;
    std::cerr << os.str() << '\n';
}

std::ifstream open_input(const std::string& path) {
    if (path.empty()) throw UsageError("missing --in");
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return in;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) std::cout << text;
    else write_file_atomic(o.out, text);
}

int single_n(const Options& o) {
    if (o.n.size() != 1) throw UsageError("expected exactly one --n");
    return o.n.front();
}

double single_p(const Options& o, int n) {
    if (o.p) return *o.p;
    if (o.c.size() == 1) return p_from_c(n, o.c.front());
    throw UsageError("expected --p or a single --c");
}

// Triple-system file: header "m k", then k lines "x x' s" with x, x' in [1, 2m], s in [1, m].
TripleSystem read_triple_system(std::istream& in) {
    detail::LineReader reader(in);
    auto header = reader.next_ints();
    if (reader.eof()) throw ParseError(reader.line(), 0, "missing header 'm k'");
    reader.expect_fields(header, 2);
    if (header[0] < 1 || header[0] > 100'000) reader.fail(1, "m out of range");
    if (header[1] < 0) reader.fail(2, "negative triple count");
    const int m = static_cast<int>(header[0]);
    std::vector<SlotTriple> present;
    for (std::int64_t i = 0; i < header[1]; ++i) {
        auto row = reader.next_ints();
        if (reader.eof()) throw ParseError(reader.line(), 0, "expected " + std::to_string(header[1]) + " triples");
        reader.expect_fields(row, 3);
        for (std::size_t k = 0; k < 2; ++k)
            if (row[k] < 1 || row[k] > 2 * m) reader.fail(k + 1, "vertex out of range");
        if (row[0] == row[1]) reader.fail(2, "pair needs two distinct vertices");
        if (row[2] < 1 || row[2] > m) reader.fail(3, "slot out of range");
        present.emplace_back(static_cast<Vertex>(row[0]), static_cast<Vertex>(row[1]), static_cast<int>(row[2] - 1));
    }
    std::sort(present.begin(), present.end());
    if (std::adjacent_find(present.begin(), present.end()) != present.end()) throw ParseError(reader.line(), 0, "duplicate triple");
    return TripleSystem::with_plain_slots(m, std::move(present));
}

int cmd_sample(const Options& o) {
    const std::string kind = o.kind.empty() ? "h3" : o.kind;
    const int n = single_n(o);
    Rng rng(o.seed);
    std::ostringstream os;
    if (kind == "h3" || kind == "coupled") {
        const double p = single_p(o, n);
        if (kind == "h3") write_hypergraph(os, sample_h3(n, p, rng));
        else write_hypergraph(os, sample_coupled(n, p, o.r, rng).h);
    } else if (kind == "union" || kind == "union-colored") {
        write_multigraph(os, sample_union_matchings(n, o.r, rng, kind == "union-colored"), o.r);
    } else if (kind == "pairing") {
        write_multigraph(os, sample_pairing_regular(n, 2 * o.r, rng), o.r);
    } else {
        throw UsageError("unknown sample kind '" + kind + "'");
    }
    emit(o, os.str());
    return kExitOk;
}

int cmd_solve(const Options& o) {
    const std::string kind = o.kind.empty() ? "loose" : o.kind;
    const std::string method = o.method.empty() ? "exact" : o.method;
    if (method != "exact" && method != "heuristic") throw UsageError("--method must be exact or heuristic");
    auto in = open_input(o.in);
    Rng rng(o.seed);
    std::ostringstream os;
    bool found = false;
    if (kind == "loose") {
        if (method != "exact") throw UsageError("loose cycles have only the exact engine");
        const Hypergraph3 h = read_hypergraph(in);
        ExactLooseOptions opt;
        if (o.cap) opt.cap = *o.cap;
        if (auto c = exact_loose_hamilton(h, opt)) {
            write_loose_cycle(os, *c);
            found = true;
        }
    } else if (kind == "rainbow") {
        const MultigraphFile file = read_multigraph(in);
        std::optional<RainbowCycleCert> cert;
        if (method == "exact") {
            ExactRainbowOptions opt;
            if (o.cap) opt.cap = *o.cap;
            cert = exact_rainbow_hamilton(file.graph, opt);
        } else {
            cert = heuristic_rainbow_hamilton(file.graph, o.budget ? o.budget : 2'000'000, rng);
        }
        if (cert) {
            write_rainbow_cert(os, *cert);
            found = true;
        }
    } else if (kind == "matching") {
        const TripleSystem ts = read_triple_system(in);
        std::optional<PerfectMatching> pm;
        if (method == "exact") {
            ExactMatchingOptions opt;
            if (o.cap) opt.max_m = *o.cap;
            pm = exact_matching(ts, opt);
        } else {
            pm = heuristic_matching(ts, o.budget ? o.budget : 200'000, rng);
        }
        if (pm) {
            for (const SlotTriple& t : pm->triples) os << t.x << ' ' << t.y << ' ' << (t.slot + 1) << '\n';
            found = true;
        }
    } else {
        throw UsageError("unknown solve kind '" + kind + "'");
    }
    if (!found) {
        std::cerr << "not found\n";
        return kExitNo;
    }
    emit(o, os.str());
    return kExitOk;
}

int cmd_pipeline(const Options& o) {
    const int n = single_n(o);
    const double p = single_p(o, n);
    PipelineOptions opt;
    const std::string method = o.method.empty() ? "exact" : o.method;
    if (method == "exact") opt.solver = SolverChoice::exact;
    else if (method == "heuristic") opt.solver = SolverChoice::heuristic;
    else throw UsageError("--method must be exact or heuristic");
    if (o.cap) opt.rainbow_caps.cap = *o.cap;
    if (o.budget) opt.matching_budget = opt.rainbow_budget = o.budget;
    const PipelineReport rep = run_pipeline(n, p, o.r, o.seed, opt);
    const std::string format = o.format.empty() ? "text" : o.format;
    if (format == "json") emit(o, to_json(rep).dump(2) + "\n");
    else if (format == "text") emit(o, to_text(rep));
    else throw UsageError("--format must be text or json");
    return rep.success ? kExitOk : kExitNo;
}

int cmd_sweep(const Options& o) {
    SweepSpec spec;
    if (!o.n.empty()) spec.ns = o.n;
    if (!o.c.empty()) spec.cs = o.c;
    if (o.p) throw UsageError("sweep takes --c, not --p");
    spec.r = o.r;
    spec.trials = o.trials;
    spec.seed = o.seed;
    spec.workers = o.workers;
    spec.confidence = o.confidence;
    const std::string method = o.method.empty() ? "exact" : o.method;
    if (method == "exact") spec.method = SweepMethod::exact;
    else if (method == "pipeline") spec.method = SweepMethod::pipeline;
    else throw UsageError("--method must be exact or pipeline");
    if (o.cap) spec.oracle.cap = *o.cap;
    spec.validate();
    const SweepResult result = run_sweep(spec);
    const std::string format = o.format.empty() ? "csv" : o.format;
    if (format == "csv") emit(o, to_csv(result));
    else if (format == "json") emit(o, to_json(result).dump(2) + "\n");
    else throw UsageError("--format must be csv or json");
    for (int n : spec.ns) std::cerr << "# n=" << n << " 50% crossing c*=" << crossing_c(result, n) << '\n';
    return kExitOk;
}

int cmd_verify(const Options& o) {
    const std::string kind = o.kind.empty() ? "loose" : o.kind;
    auto in = open_input(o.in);
    if (o.cert.empty()) throw UsageError("missing --cert");
    std::ifstream cert_in(o.cert);
    if (!cert_in) throw UsageError("cannot open " + o.cert);
    if (kind == "loose") {
        const Hypergraph3 h = read_hypergraph(in);
        const LooseCycle c = read_loose_cycle(cert_in);
        const LooseVerdict v = verify_loose_hamilton(h, c);
        std::cout << (v.ok ? "valid loose Hamilton cycle" : "invalid: " + v.detail) << '\n';
        return v.ok ? kExitOk : kExitNo;
    }
    if (kind == "rainbow") {
        const MultigraphFile file = read_multigraph(in);
        const RainbowCycleCert cert = read_rainbow_cert(cert_in);
        const RainbowVerdict v = verify_rainbow_hamilton(file.graph, cert);
        std::cout << (v.ok ? "valid rainbow Hamilton cycle" : "invalid: " + v.detail) << '\n';
        return v.ok ? kExitOk : kExitNo;
    }
    throw UsageError("unknown verify kind '" + kind + "'");
}

int cmd_probe(const Options& o) {
    const std::string kind = o.kind.empty() ? "isolated" : o.kind;
    if (kind == "isolated") {
        const std::vector<int> ns = o.n.empty() ? std::vector<int>{8, 12, 16} : o.n;
        const std::vector<double> cs = o.c.empty() ? std::vector<double>{0.5, 1, 2} : o.c;
        emit(o, to_csv(isolated_experiment(ns, cs, o.trials, o.seed, o.workers)));
        return kExitOk;
    }
    if (kind == "contiguity") {
        emit(o, to_text(contiguity_probe(single_n(o), o.r, o.trials, o.seed)));
        return kExitOk;
    }
    if (kind == "oracle") {
        const int n = single_n(o);
        const OracleComparison cmp = pipeline_vs_oracle(n, single_p(o, n), o.r, o.trials, o.seed);
        std::ostringstream os;
        os << "n,p,r,trials,both_yes,pipeline_only,oracle_only,both_no,loss_rate\n"
           << cmp.n << ',' << cmp.p << ',' << cmp.r << ',' << cmp.trials << ',' << cmp.both_yes << ',' << cmp.pipeline_only << ','
           << cmp.oracle_only << ',' << cmp.both_no << ',' << cmp.loss_rate() << '\n';
        emit(o, os.str());
        return cmp.sound() ? kExitOk : kExitNo;
    }
    if (kind == "recolor") {
        const int n = single_n(o);
        const RecolorComparison cmp = recolor_experiment(n, single_p(o, n), o.r, o.trials, o.seed);
        std::ostringstream os;
        os << "trials,matched,rainbow_original,rainbow_recolored\n"
           << cmp.trials << ',' << cmp.matched << ',' << cmp.rainbow_original << ',' << cmp.rainbow_recolored << '\n';
        emit(o, os.str());
        return kExitOk;
    }
    throw UsageError("unknown probe kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Loose Hamilton cycles in random 3-uniform hypergraphs"};
    app.set_version_flag("--version", LOOSEHC_VERSION);
    app.require_subcommand(1);
    Options o;

    auto common = [&o](CLI::App* sub) {
        sub->add_option("--n", o.n, "vertex count(s); sweep accepts several");
        auto* p = sub->add_option("--p", o.p, "edge probability")->check(CLI::Range(0.0, 1.0));
        auto* c = sub->add_option("--c", o.c, "p = c ln n / n^2; sweep accepts several");
        p->excludes(c);
        c->excludes(p);
        sub->add_option("--r", o.r, "copies per color (degree 2r)")->check(CLI::PositiveNumber);
        sub->add_option("--trials", o.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "master seed (64-bit unsigned)");
        sub->add_option("--method", o.method, "engine or sweep method");
        sub->add_option("--format", o.format, "output format");
        sub->add_option("--out", o.out, "output file (written atomically); stdout if absent");
        sub->add_option("--cap", o.cap, "size cap for exact engines")->check(CLI::PositiveNumber);
        sub->add_option("--workers", o.workers, "worker threads; never changes results")->check(CLI::PositiveNumber);
        sub->add_option("--kind", o.kind, "object kind");
        sub->add_option("--in", o.in, "instance file");
        sub->add_option("--cert", o.cert, "cycle or certificate file");
        sub->add_option("--budget", o.budget, "step budget for heuristic engines");
        sub->add_option("--confidence", o.confidence, "confidence level of sweep intervals")->check(CLI::Range(0.5, 0.9999));
    };

    struct Sub {
        const char* name;
        const char* help;
        int (*run)(const Options&);
    };
    const Sub subs[] = {
        {"sample", "draw a hypergraph (h3, coupled) or multigraph (union, union-colored, pairing)", cmd_sample},
        {"solve", "run an engine on a file: loose, rainbow or matching", cmd_solve},
        {"pipeline", "run the full reduction once and print its report", cmd_pipeline},
        {"sweep", "threshold sweep over (n, c) to CSV or JSON", cmd_sweep},
        {"verify", "check a loose cycle or rainbow certificate against an instance", cmd_verify},
        {"probe", "isolated-vertex, contiguity, oracle or recolor experiments", cmd_probe},
    };
    std::vector<std::pair<CLI::App*, const Sub*>> registered;
    for (const Sub& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        common(sub);
        registered.emplace_back(sub, &s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    for (const auto& [sub, s] : registered) {
        if (!sub->parsed()) continue;
        banner(s->name, o);
        try {
            return s->run(o);
        } catch (const ParseError& e) {
            std::cerr << "input error: " << e.what() << '\n';
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
        }
        return kExitUsage;
    }
    return kExitUsage;
}
