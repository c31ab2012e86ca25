#pragma once

// 3-uniform hypergraphs on [n], loose Hamilton cycles, and the
// isolated-vertex lower-bound quantities.

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "text_io.hpp"

namespace loosehc {

using Vertex = int;

/// Unordered triple of vertices, stored ascending.
class Triple {
public:
    Triple() = default;
    Triple(Vertex x, Vertex y, Vertex z) {
        if (x > y) std::swap(x, y);
        if (y > z) std::swap(y, z);
        if (x > y) std::swap(x, y);
        if (x == y || y == z)
            throw std::invalid_argument("triple has repeated vertex " + std::to_string(y));
        v_[0] = x;
        v_[1] = y;
        v_[2] = z;
    }

    Vertex a() const { return v_[0]; }
    Vertex b() const { return v_[1]; }
    Vertex c() const { return v_[2]; }
    Vertex operator[](std::size_t i) const { return v_[i]; }

    bool contains(Vertex v) const { return v_[0] == v || v_[1] == v || v_[2] == v; }

    auto operator<=>(const Triple&) const = default;

private:
    Vertex v_[3] = {0, 0, 0};
};

inline std::ostream& operator<<(std::ostream& os, const Triple& t) {
    return os << '{' << t.a() << ',' << t.b() << ',' << t.c() << '}';
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// 3-uniform hypergraph with vertex set [1, n]. Immutable once built.
class Hypergraph3 {
public:
    Hypergraph3() = default;

    /// Throws std::invalid_argument on out-of-range or duplicate triples.
    Hypergraph3(int n, std::vector<Triple> edges) : n_(n), edges_(std::move(edges)) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const Triple& t = edges_[i];
            if (t.a() < 1 || t.c() > n_)
                throw std::invalid_argument("triple out of range [1," + std::to_string(n_) + "]");
            if (i > 0 && edges_[i - 1] == t) {
                std::ostringstream os;
                os << "duplicate triple " << t;
                throw std::invalid_argument(os.str());
            }
        }
        incidence_.assign(static_cast<std::size_t>(n_) + 1, {});
        for (std::size_t i = 0; i < edges_.size(); ++i)
            for (int k = 0; k < 3; ++k) incidence_[edges_[i][k]].push_back(i);
    }

    /// Builds from triples already known to be sorted, distinct and in range.
    static Hypergraph3 from_sorted_unique(int n, std::vector<Triple> edges) {
        Hypergraph3 h;
        h.n_ = n;
        h.edges_ = std::move(edges);
        h.incidence_.assign(static_cast<std::size_t>(n) + 1, {});
        for (std::size_t i = 0; i < h.edges_.size(); ++i)
            for (int k = 0; k < 3; ++k) h.incidence_[h.edges_[i][k]].push_back(i);
        return h;
    }

    static Hypergraph3 complete(int n) {
        std::vector<Triple> all;
        all.reserve(binomial(static_cast<std::uint64_t>(std::max(n, 0)), 3));
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                for (int c = b + 1; c <= n; ++c) all.emplace_back(a, b, c);
        return from_sorted_unique(n, std::move(all));
    }

    int n() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Triple>& edges() const { return edges_; }

    /// Indices into edges() of the triples containing v.
    const std::vector<std::size_t>& incident(Vertex v) const { return incidence_.at(static_cast<std::size_t>(v)); }
    std::size_t degree(Vertex v) const { return incident(v).size(); }

    bool has_edge(const Triple& t) const { return std::binary_search(edges_.begin(), edges_.end(), t); }
    bool has_edge(Vertex x, Vertex y, Vertex z) const {
        if (x == y || y == z || x == z) return false;
        return has_edge(Triple(x, y, z));
    }

    bool operator==(const Hypergraph3& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    int n_ = 0;
    std::vector<Triple> edges_;
    std::vector<std::vector<std::size_t>> incidence_;
};

/// Candidate loose Hamilton cycle: edges {links[i], middles[i], links[i+1]},
/// indices taken cyclically.
struct LooseCycle {
    std::vector<Vertex> links;
    std::vector<Vertex> middles;

    std::size_t length() const { return links.size(); }

    std::vector<Triple> edge_set() const {
        std::vector<Triple> out;
        const std::size_t k = links.size();
        for (std::size_t i = 0; i < k && i < middles.size(); ++i)
            out.emplace_back(links[i], middles[i], links[(i + 1) % k]);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Rotated so links[0] is the smallest link, oriented so links[1] < links.back()
    /// (for two links: middles[0] < middles[1]).
    LooseCycle canonical() const {
        const std::size_t k = links.size();
        if (k == 0 || middles.size() != k) return *this;
        const auto shift = static_cast<std::size_t>(std::min_element(links.begin(), links.end()) - links.begin());
        LooseCycle out;
        out.links.resize(k);
        out.middles.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            out.links[i] = links[(i + shift) % k];
            out.middles[i] = middles[(i + shift) % k];
        }
        const bool flip = (k >= 3) ? out.links[1] > out.links[k - 1] : (k == 2 && out.middles[0] > out.middles[1]);
        if (flip) {
            LooseCycle rev;
            rev.links.push_back(out.links[0]);
            for (std::size_t i = k - 1; i >= 1; --i) rev.links.push_back(out.links[i]);
            for (std::size_t i = k; i-- > 0;) rev.middles.push_back(out.middles[i]);
            return rev;
        }
        return out;
    }

    auto operator<=>(const LooseCycle&) const = default;
};

enum class LooseViolation {
    none,
    wrong_length,   // |links| or |middles| differs from n/2
    out_of_range,   // a vertex outside [1, n]
    repeated,       // a vertex used twice (within or across links/middles)
    missing_edge,   // window {x_i, y_i, x_{i+1}} is not an edge
};

struct LooseVerdict {
    bool ok = false;
    LooseViolation violation = LooseViolation::none;
    /// 1-based position of the offending window or vertex; 0 when not applicable.
    std::size_t index = 0;
    std::string detail;

    explicit operator bool() const { return ok; }
};

inline LooseVerdict verify_loose_hamilton(const Hypergraph3& h, const LooseCycle& c) {
    const int n = h.n();
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("loose Hamilton cycle needs even n >= 4, got n=" + std::to_string(n));
    const auto half = static_cast<std::size_t>(n / 2);
    auto fail = [](LooseViolation v, std::size_t idx, std::string what) {
        return LooseVerdict{false, v, idx, std::move(what)};
    };
    if (c.links.size() != half || c.middles.size() != half)
        return fail(LooseViolation::wrong_length, 0,
                    "expected " + std::to_string(half) + " links and middles, got " + std::to_string(c.links.size()) +
                        " and " + std::to_string(c.middles.size()));

    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    auto mark = [&](Vertex v, std::size_t idx, const char* role) -> std::optional<LooseVerdict> {
        if (v < 1 || v > n)
            return fail(LooseViolation::out_of_range, idx, std::string(role) + " vertex " + std::to_string(v) + " out of range");
        if (seen[static_cast<std::size_t>(v)])
            return fail(LooseViolation::repeated, idx, std::string(role) + " vertex " + std::to_string(v) + " repeated");
        seen[static_cast<std::size_t>(v)] = 1;
        return std::nullopt;
    };
    for (std::size_t i = 0; i < half; ++i)
        if (auto bad = mark(c.links[i], i + 1, "link")) return *bad;
    for (std::size_t i = 0; i < half; ++i)
        if (auto bad = mark(c.middles[i], i + 1, "middle")) return *bad;

    for (std::size_t i = 0; i < half; ++i) {
        const Vertex x = c.links[i], y = c.middles[i], z = c.links[(i + 1) % half];
        if (!h.has_edge(x, y, z)) {
            std::ostringstream os;
            os << "missing edge " << Triple(x, y, z) << " at window " << (i + 1);
            return fail(LooseViolation::missing_edge, i + 1, os.str());
        }
    }
    return LooseVerdict{true, LooseViolation::none, 0, {}};
}

inline std::vector<Vertex> isolated_vertices(const Hypergraph3& h) {
    std::vector<Vertex> out;
    for (Vertex v = 1; v <= h.n(); ++v)
        if (h.degree(v) == 0) out.push_back(v);
    return out;
}

/// n (1-p)^C(n-1,2): expected number of isolated vertices of H_{n,p;3}.
inline double expected_isolated(int n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
    if (n <= 0) return 0.0;
    const auto avoid = static_cast<double>(binomial(static_cast<std::uint64_t>(n - 1), 2));
    if (avoid == 0.0 || p == 0.0) return n;
    if (p == 1.0) return 0.0;
    return n * std::exp(avoid * std::log1p(-p));
}

/// Variance of the isolated-vertex count of H_{n,p;3}.
inline double variance_isolated(int n, double p) {
    if (n <= 0) return 0.0;
    const double q = 1.0 - p;
    const auto avoid = static_cast<double>(binomial(static_cast<std::uint64_t>(n - 1), 2));
    const double one = std::pow(q, avoid);
    // two fixed vertices avoid 2 C(n-1,2) - (n-2) distinct triples
    const double two = std::pow(q, 2.0 * avoid - (n - 2));
    return n * one * (1.0 - one) + static_cast<double>(n) * (n - 1) * (two - one * one);
}

struct ExactLooseOptions {
    int cap = 16;  ///< refuse n above this
};

namespace detail {

constexpr int kLooseHardCap = 48;

class LooseSearch {
public:
    LooseSearch(const Hypergraph3& h, bool enumerate) : h_(h), n_(h.n()), enumerate_(enumerate) {
        pairs_.resize(static_cast<std::size_t>(n_));
        for (const Triple& t : h.edges()) {
            const int a = t.a() - 1, b = t.b() - 1, c = t.c() - 1;
            pairs_[a].emplace_back(b, c);
            pairs_[b].emplace_back(a, c);
            pairs_[c].emplace_back(a, b);
        }
        full_ = (n_ == 64) ? ~0ULL : ((1ULL << n_) - 1);
    }

    bool run() {
        // Vertex 1 is either a link (take it as x_1) or a middle (take it as y_1).
        links_ = {0};
        middles_.clear();
        if (dfs(bit(0), 0, 0) && !enumerate_) return true;
        for (const auto& [a, b] : pairs_[0]) {
            links_ = {a, b};
            middles_ = {0};
            if (dfs(bit(0) | bit(a) | bit(b), b, a) && !enumerate_) return true;
        }
        return !found_.empty();
    }

    std::uint64_t steps() const { return steps_; }
    const std::vector<LooseCycle>& found() const { return found_; }

private:
    static std::uint64_t bit(int v) { return 1ULL << v; }

    void record(int last_middle) {
        LooseCycle c;
        for (int v : links_) c.links.push_back(v + 1);
        for (int v : middles_) c.middles.push_back(v + 1);
        c.middles.push_back(last_middle + 1);
        found_.push_back(c.canonical());
    }

    bool feasible(std::uint64_t used, int cur, int first) const {
        const std::uint64_t allowed = (full_ & ~used) | bit(cur) | bit(first);
        for (std::uint64_t rest = full_ & ~used; rest; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            bool ok = false;
            for (const auto& [a, b] : pairs_[v])
                if ((allowed & bit(a)) && (allowed & bit(b))) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
        return true;
    }

    bool dfs(std::uint64_t used, int cur, int first) {
        ++steps_;
        const std::uint64_t rest = full_ & ~used;
        if (std::popcount(rest) == 1) {
            const int w = std::countr_zero(rest);
            if (cur != first && h_.has_edge(cur + 1, w + 1, first + 1)) {
                record(w);
                return true;
            }
            return false;
        }
        const std::uint64_t key = used | (static_cast<std::uint64_t>(cur) << n_) |
                                  (static_cast<std::uint64_t>(first) << (n_ + 6));
        if (!enumerate_ && dead_.contains(key)) return false;
        if (!feasible(used, cur, first)) {
            if (!enumerate_) dead_.insert(key);
            return false;
        }
        bool any = false;
        for (const auto& [a, b] : pairs_[cur]) {
            if (!(rest & bit(a)) || !(rest & bit(b))) continue;
            for (int flip = 0; flip < 2; ++flip) {
                const int mid = flip ? b : a;
                const int next = flip ? a : b;
                middles_.push_back(mid);
                links_.push_back(next);
                const bool ok = dfs(used | bit(a) | bit(b), next, first);
                links_.pop_back();
                middles_.pop_back();
                if (ok) {
                    any = true;
                    if (!enumerate_) return true;
                }
            }
        }
        if (!any && !enumerate_) dead_.insert(key);
        return any;
    }

    const Hypergraph3& h_;
    int n_;
    bool enumerate_;
    std::uint64_t full_ = 0;
    std::vector<std::vector<std::pair<int, int>>> pairs_;
    std::unordered_set<std::uint64_t> dead_;
    std::vector<int> links_, middles_;
    std::vector<LooseCycle> found_;
    std::uint64_t steps_ = 0;
};

inline void check_loose_solver_input(const Hypergraph3& h, const ExactLooseOptions& opt) {
    if (h.n() % 2 != 0) throw std::invalid_argument("loose Hamilton cycle needs even n");
    const int cap = std::min(opt.cap, kLooseHardCap);
    if (h.n() > cap)
        throw std::length_error("n=" + std::to_string(h.n()) + " exceeds exact solver cap " + std::to_string(cap));
}

}  // namespace detail

/// Complete search for a loose Hamilton cycle; result is canonical.
/// Throws std::length_error when n exceeds the cap.
inline std::optional<LooseCycle> exact_loose_hamilton(const Hypergraph3& h, const ExactLooseOptions& opt = {},
                                                      std::uint64_t* steps = nullptr) {
    detail::check_loose_solver_input(h, opt);
    if (h.n() < 4) return std::nullopt;
    if (h.edge_count() < static_cast<std::size_t>(h.n() / 2)) return std::nullopt;
    for (Vertex v = 1; v <= h.n(); ++v)
        if (h.degree(v) == 0) return std::nullopt;
    detail::LooseSearch search(h, false);
    const bool ok = search.run();
    if (steps) *steps = search.steps();
    if (!ok) return std::nullopt;
    return search.found().front();
}

/// Every loose Hamilton cycle of h, canonical and sorted, one per edge set.
inline std::vector<LooseCycle> enumerate_loose_hamilton(const Hypergraph3& h, const ExactLooseOptions& opt = {}) {
    detail::check_loose_solver_input(h, opt);
    if (h.n() < 4) return {};
    detail::LooseSearch search(h, true);
    search.run();
    std::vector<LooseCycle> all = search.found();
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

// Text format: header "n m", then m lines "a b c" with 1 <= a < b < c <= n.

inline Hypergraph3 read_hypergraph(std::istream& in) {
    detail::LineReader reader(in);
    auto header = reader.next_ints();
    if (reader.eof()) throw ParseError(reader.line(), 0, "missing header 'n m'");
    reader.expect_fields(header, 2);
    if (header[0] < 0 || header[0] > 1'000'000) reader.fail(1, "vertex count out of range");
    if (header[1] < 0) reader.fail(2, "negative edge count");
    const int n = static_cast<int>(header[0]);
    const auto m = static_cast<std::size_t>(header[1]);
    std::vector<Triple> edges;
    std::set<Triple> seen;
    for (std::size_t i = 0; i < m; ++i) {
        auto row = reader.next_ints();
        if (reader.eof())
            throw ParseError(reader.line(), 0, "expected " + std::to_string(m) + " edges, found " + std::to_string(i));
        reader.expect_fields(row, 3);
        for (std::size_t k = 0; k < 3; ++k)
            if (row[k] < 1 || row[k] > n) reader.fail(k + 1, "vertex " + std::to_string(row[k]) + " out of range");
        if (!(row[0] < row[1] && row[1] < row[2])) reader.fail(0, "triple must satisfy a < b < c");
        Triple t(static_cast<Vertex>(row[0]), static_cast<Vertex>(row[1]), static_cast<Vertex>(row[2]));
        if (!seen.insert(t).second) reader.fail(0, "duplicate triple");
        edges.push_back(t);
    }
    if (auto extra = reader.next_ints(); !reader.eof()) reader.fail(0, "unexpected trailing data");
    return Hypergraph3(n, std::move(edges));
}

inline void write_hypergraph(std::ostream& out, const Hypergraph3& h) {
    out << h.n() << ' ' << h.edge_count() << '\n';
    for (const Triple& t : h.edges()) out << t.a() << ' ' << t.b() << ' ' << t.c() << '\n';
}

// Cycle file: first line the links, second line the middles.

inline LooseCycle read_loose_cycle(std::istream& in) {
    detail::LineReader reader(in);
    LooseCycle c;
    auto to_vertices = [&](const std::vector<std::int64_t>& row, std::vector<Vertex>& dst) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (row[k] < 1 || row[k] > 1'000'000) reader.fail(k + 1, "vertex out of range");
            dst.push_back(static_cast<Vertex>(row[k]));
        }
    };
    auto links = reader.next_ints();
    if (reader.eof()) throw ParseError(reader.line(), 0, "missing links line");
    to_vertices(links, c.links);
    auto middles = reader.next_ints();
    if (reader.eof()) throw ParseError(reader.line(), 0, "missing middles line");
    to_vertices(middles, c.middles);
    return c;
}

inline void write_loose_cycle(std::ostream& out, const LooseCycle& c) {
    for (std::size_t i = 0; i < c.links.size(); ++i) out << (i ? " " : "") << c.links[i];
    out << '\n';
    for (std::size_t i = 0; i < c.middles.size(); ++i) out << (i ? " " : "") << c.middles[i];
    out << '\n';
}

}  // namespace loosehc
