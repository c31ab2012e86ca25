#pragma once

// Seeded generators: H_{n,p;3}, the tripartite systems Γ(X, Y, p), the copy
// set partition, the exact coupling of H with 2r independent Γ's, and the two
// 2r-regular multigraph models (union of matchings, pairing model).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "colorgraph.hpp"
#include "hypercore.hpp"
#include "rng.hpp"

namespace loosehc {

/// Probability splits: p = 1-(1-p1)^{2r}, p1 = 1-(1-p2)^r, q = 1-(1-p1)^r.
struct SplitParams {
    int r = 4;
    double p = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double q = 0.0;
};

/// Computed through log1p/expm1 so tiny p keep full relative precision.
inline SplitParams split_probability(double p, int r) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    SplitParams s;
    s.r = r;
    s.p = p;
    if (p == 0.0) return s;
    if (p == 1.0) {
        s.p1 = s.p2 = s.q = 1.0;
        return s;
    }
    const double log_keep = std::log1p(-p);  // log(1-p)
    const double log_keep1 = log_keep / (2.0 * r);
    s.p1 = -std::expm1(log_keep1);
    s.p2 = -std::expm1(log_keep1 / r);
    s.q = -std::expm1(log_keep1 * r);
    return s;
}

namespace detail {

/// Calls fn(index) for each index in [0, total) kept independently with probability p.
template <typename Fn>
void bernoulli_indices(std::uint64_t total, double p, Rng& rng, Fn&& fn) {
    if (total == 0 || p <= 0.0) return;
    if (p >= 1.0) {
        for (std::uint64_t i = 0; i < total; ++i) fn(i);
        return;
    }
    const double log_q = std::log1p(-p);
    std::uint64_t i = 0;
    for (;;) {
        const std::uint64_t skip = rng.geometric_skip(log_q);
        if (skip >= total - i) return;
        i += skip;
        fn(i);
        if (++i >= total) return;
    }
}

/// Colex unranking of 2-subsets of {0, 1, ...}: rank = C(b,2) + a, a < b.
inline std::pair<int, int> unrank_pair(std::uint64_t rank) {
    auto b = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(rank))) / 2.0);
    while (b * (b - 1) / 2 > rank) --b;
    while ((b + 1) * b / 2 <= rank) ++b;
    return {static_cast<int>(rank - b * (b - 1) / 2), static_cast<int>(b)};
}

inline std::uint64_t rank_pair(int a, int b) {
    return static_cast<std::uint64_t>(b) * static_cast<std::uint64_t>(b - 1) / 2 + static_cast<std::uint64_t>(a);
}

/// Colex unranking of 3-subsets: rank = C(c,3) + C(b,2) + a, a < b < c.
inline std::tuple<int, int, int> unrank_triple(std::uint64_t rank) {
    auto c = static_cast<std::uint64_t>(std::cbrt(6.0 * static_cast<double>(rank)));
    while (c > 2 && binomial(c, 3) > rank) --c;
    while (binomial(c + 1, 3) <= rank) ++c;
    const auto [a, b] = unrank_pair(rank - binomial(c, 3));
    return {a, b, static_cast<int>(c)};
}

}  // namespace detail

/// H_{n,p;3} by geometric skipping over the colex-ranked triples.
inline Hypergraph3 sample_h3(int n, double p, Rng& rng) {
    if (n < 3) throw std::invalid_argument("sample_h3 needs n >= 3");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
    std::vector<Triple> edges;
    detail::bernoulli_indices(binomial(static_cast<std::uint64_t>(n), 3), p, rng, [&](std::uint64_t idx) {
        const auto [a, b, c] = detail::unrank_triple(idx);
        edges.emplace_back(a + 1, b + 1, c + 1);
    });
    std::sort(edges.begin(), edges.end());
    return Hypergraph3::from_sorted_unique(n, std::move(edges));
}

/// One copy (y, i) of a base color y in X̄; `copy` is 1-based.
struct CopyColor {
    Color color = 0;
    int copy = 0;
    auto operator<=>(const CopyColor&) const = default;
};

/// The r copies of each of the 2m colors of X̄ = [2m+1, 4m], partitioned into
/// 2r blocks Y_1..Y_{2r} of m elements each.
struct CopySet {
    int m = 0;
    int r = 0;
    std::vector<std::vector<CopyColor>> blocks;

    int block_count() const { return 2 * r; }
    Color first_color() const { return 2 * m + 1; }

    /// Every color has r copies, each copy appears once, blocks have size m.
    bool valid() const {
        if (m < 1 || r < 1 || blocks.size() != static_cast<std::size_t>(2 * r)) return false;
        std::vector<std::vector<char>> seen(static_cast<std::size_t>(2 * m), std::vector<char>(static_cast<std::size_t>(r), 0));
        for (const auto& block : blocks) {
            if (block.size() != static_cast<std::size_t>(m)) return false;
            for (const CopyColor& cc : block) {
                if (cc.color < first_color() || cc.color > 4 * m || cc.copy < 1 || cc.copy > r) return false;
                char& s = seen[static_cast<std::size_t>(cc.color - first_color())][static_cast<std::size_t>(cc.copy - 1)];
                if (s) return false;
                s = 1;
            }
        }
        return true;
    }
};

/// Uniform equipartition: shuffle the 2rm copies and slice into 2r blocks.
inline CopySet sample_copyset_partition(int m, int r, Rng& rng) {
    if (m < 1 || r < 1) throw std::invalid_argument("copy set needs m >= 1 and r >= 1");
    std::vector<CopyColor> all;
    all.reserve(static_cast<std::size_t>(2 * m * r));
    for (Color y = 2 * m + 1; y <= 4 * m; ++y)
        for (int i = 1; i <= r; ++i) all.push_back({y, i});
    rng.shuffle(std::span<CopyColor>(all));
    CopySet cs{m, r, {}};
    for (int j = 0; j < 2 * r; ++j)
        cs.blocks.emplace_back(all.begin() + static_cast<std::ptrdiff_t>(j) * m,
                               all.begin() + static_cast<std::ptrdiff_t>(j + 1) * m);
    return cs;
}

/// Element ({x, x'}, η) of C(X,2) × Y; `slot` indexes Y (0-based).
struct SlotTriple {
    Vertex x = 0;
    Vertex y = 0;
    int slot = 0;

    SlotTriple() = default;
    SlotTriple(Vertex a, Vertex b, int s) : x(std::min(a, b)), y(std::max(a, b)), slot(s) {}
    auto operator<=>(const SlotTriple&) const = default;
};

/// Γ(X, Y, p) instance: X = [1, 2m], Y = `slots` (m copy colors).
class TripleSystem {
public:
    TripleSystem() = default;

    TripleSystem(int m, std::vector<CopyColor> slots, std::vector<SlotTriple> present)
        : m_(m), slots_(std::move(slots)), present_(std::move(present)) {
        if (m < 1) throw std::invalid_argument("triple system needs m >= 1");
        if (slots_.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("|X| must equal 2|Y|");
        std::sort(present_.begin(), present_.end());
        for (std::size_t i = 0; i < present_.size(); ++i) {
            const SlotTriple& t = present_[i];
            if (t.x < 1 || t.x == t.y || t.y > 2 * m || t.slot < 0 || t.slot >= m)
                throw std::invalid_argument("triple outside C(X,2) x Y");
            if (i > 0 && present_[i - 1] == t) throw std::invalid_argument("duplicate triple in system");
        }
    }

    /// Slots labelled by placeholder copies (color 0, copy 1..m).
    static TripleSystem with_plain_slots(int m, std::vector<SlotTriple> present) {
        std::vector<CopyColor> slots;
        for (int s = 0; s < m; ++s) slots.push_back({0, s + 1});
        return TripleSystem(m, std::move(slots), std::move(present));
    }

    int m() const { return m_; }
    int x_count() const { return 2 * m_; }
    const std::vector<CopyColor>& slots() const { return slots_; }
    const std::vector<SlotTriple>& present() const { return present_; }
    std::uint64_t universe_size() const { return binomial(static_cast<std::uint64_t>(2 * m_), 2) * static_cast<std::uint64_t>(m_); }

    bool has(const SlotTriple& t) const { return std::binary_search(present_.begin(), present_.end(), t); }

private:
    int m_ = 0;
    std::vector<CopyColor> slots_;
    std::vector<SlotTriple> present_;
};

/// Each of the C(2m,2)·m triples present independently with probability p1.
inline TripleSystem sample_gamma(int m, std::vector<CopyColor> slots, double p1, Rng& rng) {
    if (m < 1 || slots.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("|X| must equal 2|Y|");
    std::vector<SlotTriple> present;
    const auto mm = static_cast<std::uint64_t>(m);
    detail::bernoulli_indices(binomial(2 * mm, 2) * mm, p1, rng, [&](std::uint64_t idx) {
        const auto [a, b] = detail::unrank_pair(idx / mm);
        present.emplace_back(a + 1, b + 1, static_cast<int>(idx % mm));
    });
    return TripleSystem(m, std::move(slots), std::move(present));
}

struct CoupledSample {
    SplitParams split;
    Hypergraph3 h;
    CopySet copies;
    std::vector<TripleSystem> systems;  ///< system j is Γ(X, Y_j, p1)

    int m() const { return copies.m; }

    /// Base triple {x, y, x'} of H carried by a present copy-triple of system j.
    Triple project(std::size_t j, const SlotTriple& t) const {
        return Triple(t.x, t.y, copies.blocks[j][static_cast<std::size_t>(t.slot)].color);
    }
};

/// H_{n,p;3} coupled with 2r independent Γ(X, Y_j, p1) so that every present
/// copy-triple projects into H. X = [1, n/2], X̄ = [n/2+1, n].
///
/// A base triple {x, y, x'} (x, x' in X, y in X̄) is in H iff one of its r
/// copy-triples is present or an independent top-up coin of probability q
/// lands: 1 - (1-p1)^r (1-q) = p. All other triples are drawn directly at p.
inline CoupledSample sample_coupled(int n, double p, int r, Rng& rng) {
    if (n < 8 || n % 4 != 0) throw std::invalid_argument("coupled sampling needs n divisible by 4 and n >= 8");
    CoupledSample out;
    out.split = split_probability(p, r);
    const int m = n / 4;
    const int link_count = 2 * m;
    out.copies = sample_copyset_partition(m, r, rng);
    for (int j = 0; j < 2 * r; ++j)
        out.systems.push_back(sample_gamma(m, out.copies.blocks[static_cast<std::size_t>(j)], out.split.p1, rng));

    std::vector<Triple> edges;
    // triples not of shape (X, X, X̄)
    detail::bernoulli_indices(binomial(static_cast<std::uint64_t>(n), 3), p, rng, [&](std::uint64_t idx) {
        const auto [a, b, c] = detail::unrank_triple(idx);
        const bool link_link_middle = (b + 1) <= link_count && (c + 1) > link_count;
        if (!link_link_middle) edges.emplace_back(a + 1, b + 1, c + 1);
    });
    for (std::size_t j = 0; j < out.systems.size(); ++j)
        for (const SlotTriple& t : out.systems[j].present()) edges.push_back(out.project(j, t));
    const auto middles = static_cast<std::uint64_t>(n - link_count);
    detail::bernoulli_indices(binomial(static_cast<std::uint64_t>(link_count), 2) * middles, out.split.q, rng,
                              [&](std::uint64_t idx) {
                                  const auto [a, b] = detail::unrank_pair(idx / middles);
                                  edges.emplace_back(a + 1, b + 1, link_count + 1 + static_cast<int>(idx % middles));
                              });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    out.h = Hypergraph3::from_sorted_unique(n, std::move(edges));
    return out;
}

namespace detail {

inline std::vector<std::pair<Vertex, Vertex>> uniform_perfect_matching(int vertex_count, Rng& rng) {
    std::vector<Vertex> perm(static_cast<std::size_t>(vertex_count));
    for (int i = 0; i < vertex_count; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    rng.shuffle(std::span<Vertex>(perm));
    std::vector<std::pair<Vertex, Vertex>> out;
    for (std::size_t i = 0; i + 1 < perm.size(); i += 2) out.emplace_back(perm[i], perm[i + 1]);
    return out;
}

}  // namespace detail

/// Γ_{2r}: union of 2r independent uniform perfect matchings on [1, vertex_count].
/// Colored variant: layer j is colored by a random bijection from block Y_j of a
/// uniform copy-set partition, so every color is used exactly r times.
inline ColoredMultigraph sample_union_matchings(int vertex_count, int r, Rng& rng, bool colored = false) {
    if (vertex_count < 2 || vertex_count % 2 != 0) throw std::invalid_argument("union of matchings needs an even vertex count >= 2");
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    std::vector<ColoredEdge> edges;
    edges.reserve(static_cast<std::size_t>(r * vertex_count));
    std::optional<CopySet> palette;
    if (colored) palette = sample_copyset_partition(vertex_count / 2, r, rng);
    for (int j = 0; j < 2 * r; ++j) {
        const auto matching = detail::uniform_perfect_matching(vertex_count, rng);
        for (std::size_t k = 0; k < matching.size(); ++k) {
            const Color c = colored ? palette->blocks[static_cast<std::size_t>(j)][k].color : kUncolored;
            edges.emplace_back(matching[k].first, matching[k].second, c);
        }
    }
    return ColoredMultigraph(vertex_count, colored ? vertex_count : 0, std::move(edges));
}

/// Pairing-model d-regular multigraph, resampled until loopless. Parallel
/// edges are kept.
inline ColoredMultigraph sample_pairing_regular(int vertex_count, int d, Rng& rng, std::uint64_t max_attempts = 1'000'000) {
    if (vertex_count < 1 || d < 0 || (static_cast<std::int64_t>(vertex_count) * d) % 2 != 0 || (vertex_count == 1 && d > 0))
        throw std::invalid_argument("no loopless " + std::to_string(d) + "-regular multigraph on " +
                                    std::to_string(vertex_count) + " vertices");
    std::vector<Vertex> half_edges;
    for (Vertex v = 1; v <= vertex_count; ++v)
        for (int k = 0; k < d; ++k) half_edges.push_back(v);
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        rng.shuffle(std::span<Vertex>(half_edges));
        bool loop = false;
        for (std::size_t i = 0; i + 1 < half_edges.size(); i += 2)
            if (half_edges[i] == half_edges[i + 1]) {
                loop = true;
                break;
            }
        if (loop) continue;
        std::vector<ColoredEdge> edges;
        for (std::size_t i = 0; i + 1 < half_edges.size(); i += 2)
            edges.emplace_back(half_edges[i], half_edges[i + 1], kUncolored);
        return ColoredMultigraph(vertex_count, 0, std::move(edges));
    }
    throw std::runtime_error("pairing model: no loopless pairing within attempt limit");
}

}  // namespace loosehc
