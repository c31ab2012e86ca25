#pragma once

// Edge-colored multigraphs on the link set X = [1, V], with colors drawn from
// X̄ = [V+1, V+C]. Parallel edges are kept as distinct entries.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hypercore.hpp"
#include "text_io.hpp"

namespace loosehc {

using Color = int;

/// Color value carried by edges of an uncolored multigraph.
inline constexpr Color kUncolored = 0;

struct ColoredEdge {
    Vertex u = 0;
    Vertex v = 0;
    Color color = kUncolored;

    ColoredEdge() = default;
    ColoredEdge(Vertex a, Vertex b, Color c) : u(std::min(a, b)), v(std::max(a, b)), color(c) {}

    bool is_loop() const { return u == v; }
    auto operator<=>(const ColoredEdge&) const = default;
};

class ColoredMultigraph {
public:
    ColoredMultigraph() = default;

    /// `color_count` == 0 makes an uncolored multigraph (every edge carries kUncolored).
    /// Otherwise colors are [vertex_count + 1, vertex_count + color_count].
    ColoredMultigraph(int vertex_count, int color_count, std::vector<ColoredEdge> edges)
        : vertices_(vertex_count), colors_(color_count), edges_(std::move(edges)) {
        if (vertex_count < 0 || color_count < 0) throw std::invalid_argument("negative size");
        usage_.assign(static_cast<std::size_t>(colors_), 0);
        degree_.assign(static_cast<std::size_t>(vertices_) + 1, 0);
        for (const ColoredEdge& e : edges_) {
            if (e.u < 1 || e.v > vertices_)
                throw std::invalid_argument("edge endpoint out of range [1," + std::to_string(vertices_) + "]");
            if (colors_ == 0) {
                if (e.color != kUncolored) throw std::invalid_argument("colored edge in an uncolored multigraph");
            } else {
                if (!has_color(e.color)) throw std::invalid_argument("color " + std::to_string(e.color) + " outside palette");
                ++usage_[static_cast<std::size_t>(e.color - first_color())];
            }
            ++degree_[static_cast<std::size_t>(e.u)];
            ++degree_[static_cast<std::size_t>(e.v)];
        }
        lookup_ = edges_;
        std::sort(lookup_.begin(), lookup_.end());
        adjacency_.assign(static_cast<std::size_t>(vertices_) + 1, {});
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const ColoredEdge& e = edges_[i];
            adjacency_[e.u].push_back({e.v, e.color, i});
            if (!e.is_loop()) adjacency_[e.v].push_back({e.u, e.color, i});
        }
    }

    struct Incidence {
        Vertex other;
        Color color;
        std::size_t edge;
    };

    int vertex_count() const { return vertices_; }
    int color_count() const { return colors_; }
    bool colored() const { return colors_ > 0; }
    Color first_color() const { return vertices_ + 1; }
    bool has_color(Color c) const { return colors_ > 0 && c >= first_color() && c < first_color() + colors_; }
    std::size_t color_index(Color c) const { return static_cast<std::size_t>(c - first_color()); }

    const std::vector<ColoredEdge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    /// Edges carrying color c.
    int usage(Color c) const { return has_color(c) ? usage_[color_index(c)] : 0; }
    const std::vector<int>& usage_counts() const { return usage_; }
    /// Loops count twice.
    int degree(Vertex v) const { return degree_.at(static_cast<std::size_t>(v)); }

    const std::vector<Incidence>& incident(Vertex v) const { return adjacency_.at(static_cast<std::size_t>(v)); }

    bool has_edge(Vertex a, Vertex b, Color c) const {
        return std::binary_search(lookup_.begin(), lookup_.end(), ColoredEdge(a, b, c));
    }

    /// Number of edges between a and b regardless of color.
    std::size_t multiplicity(Vertex a, Vertex b) const {
        const ColoredEdge lo(a, b, std::numeric_limits<Color>::min());
        const ColoredEdge hi(a, b, std::numeric_limits<Color>::max());
        return static_cast<std::size_t>(std::upper_bound(lookup_.begin(), lookup_.end(), hi) -
                                        std::lower_bound(lookup_.begin(), lookup_.end(), lo));
    }

    bool is_regular(int d) const {
        for (Vertex v = 1; v <= vertices_; ++v)
            if (degree(v) != d) return false;
        return true;
    }

    bool operator==(const ColoredMultigraph& o) const {
        return vertices_ == o.vertices_ && colors_ == o.colors_ && edges_ == o.edges_;
    }

private:
    int vertices_ = 0;
    int colors_ = 0;
    std::vector<ColoredEdge> edges_;
    std::vector<ColoredEdge> lookup_;
    std::vector<int> usage_;
    std::vector<int> degree_;
    std::vector<std::vector<Incidence>> adjacency_;
};

/// Every color of the palette is used exactly r times.
inline bool is_equitable(const ColoredMultigraph& g, int r) {
    if (!g.colored()) return false;
    return std::all_of(g.usage_counts().begin(), g.usage_counts().end(), [r](int u) { return u == r; });
}

/// Cyclic vertex order with the color of each step (order[i] -> order[i+1]).
struct RainbowCycleCert {
    std::vector<Vertex> order;
    std::vector<Color> colors;

    bool operator==(const RainbowCycleCert&) const = default;
};

enum class RainbowViolation {
    none,
    wrong_length,      // order or colors not of size V
    not_permutation,   // order is not a permutation of X
    repeated_color,    // two steps share a color
    bad_color,         // a color outside the palette
    missing_edge,      // (x_i, x_{i+1}) with color y_i is not an edge
};

struct RainbowVerdict {
    bool ok = false;
    RainbowViolation violation = RainbowViolation::none;
    std::size_t index = 0;  ///< 1-based step, 0 when not applicable
    std::string detail;

    explicit operator bool() const { return ok; }
};

inline RainbowVerdict verify_rainbow_hamilton(const ColoredMultigraph& g, const RainbowCycleCert& cert) {
    auto fail = [](RainbowViolation v, std::size_t i, std::string what) {
        return RainbowVerdict{false, v, i, std::move(what)};
    };
    const auto V = static_cast<std::size_t>(g.vertex_count());
    if (V < 2 || cert.order.size() != V || cert.colors.size() != V)
        return fail(RainbowViolation::wrong_length, 0, "certificate must list " + std::to_string(V) + " vertices and colors");
    std::vector<char> seen(V + 1, 0);
    for (std::size_t i = 0; i < V; ++i) {
        const Vertex x = cert.order[i];
        if (x < 1 || static_cast<std::size_t>(x) > V || seen[static_cast<std::size_t>(x)])
            return fail(RainbowViolation::not_permutation, i + 1, "vertex " + std::to_string(x) + " invalid or repeated");
        seen[static_cast<std::size_t>(x)] = 1;
    }
    std::vector<char> used(static_cast<std::size_t>(g.color_count()), 0);
    for (std::size_t i = 0; i < V; ++i) {
        const Color c = cert.colors[i];
        if (!g.has_color(c)) return fail(RainbowViolation::bad_color, i + 1, "color " + std::to_string(c) + " outside palette");
        if (used[g.color_index(c)]) return fail(RainbowViolation::repeated_color, i + 1, "color " + std::to_string(c) + " repeated");
        used[g.color_index(c)] = 1;
    }
    for (std::size_t i = 0; i < V; ++i) {
        const Vertex a = cert.order[i], b = cert.order[(i + 1) % V];
        if (!g.has_edge(a, b, cert.colors[i]))
            return fail(RainbowViolation::missing_edge, i + 1,
                        "no edge " + std::to_string(a) + "-" + std::to_string(b) + " of color " + std::to_string(cert.colors[i]));
    }
    return RainbowVerdict{true, RainbowViolation::none, 0, {}};
}

/// Links are the cycle's vertices, middles its colors. The result is canonical.
/// Throws std::invalid_argument if the certificate is not internally consistent.
inline LooseCycle lift_to_loose(const RainbowCycleCert& cert) {
    const std::size_t k = cert.order.size();
    if (k < 2 || cert.colors.size() != k) throw std::invalid_argument("certificate lengths invalid");
    std::vector<int> all(cert.order.begin(), cert.order.end());
    all.insert(all.end(), cert.colors.begin(), cert.colors.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw std::invalid_argument("certificate repeats a vertex or color");
    return LooseCycle{cert.order, cert.colors}.canonical();
}

/// Hamiltonicity of the underlying multigraph, colors ignored. Loops never help;
/// on two vertices a Hamilton cycle needs two parallel edges.
inline bool is_hamiltonian(const ColoredMultigraph& g) {
    const int V = g.vertex_count();
    if (V > 24) throw std::length_error("Hamiltonicity check limited to 24 vertices");
    if (V < 2) return false;
    if (V == 2) return g.multiplicity(1, 2) >= 2;
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(V), 0);
    for (const ColoredEdge& e : g.edges())
        if (!e.is_loop()) {
            adj[e.u - 1] |= 1u << (e.v - 1);
            adj[e.v - 1] |= 1u << (e.u - 1);
        }
    // reach[S] = endpoints v such that a path from vertex 0 covers exactly S and ends at v
    const std::size_t states = std::size_t{1} << V;
    std::vector<std::uint32_t> reach(states, 0);
    reach[1] = 1;
    for (std::size_t s = 1; s < states; s += 2) {
        std::uint32_t ends = reach[s];
        while (ends) {
            const int v = std::countr_zero(ends);
            ends &= ends - 1;
            std::uint32_t next = adj[v] & ~static_cast<std::uint32_t>(s);
            while (next) {
                const int w = std::countr_zero(next);
                next &= next - 1;
                reach[s | (std::size_t{1} << w)] |= 1u << w;
            }
        }
    }
    return (reach[states - 1] & adj[0]) != 0;
}

// Text format: header "V r" (V = 2m, r = nominal uses per color), then lines
// "u v y", 1-indexed. y = 0 marks an uncolored multigraph; otherwise
// colors lie in [V+1, 2V].

struct MultigraphFile {
    ColoredMultigraph graph;
    int r = 0;
};

inline MultigraphFile read_multigraph(std::istream& in) {
    detail::LineReader reader(in);
    auto header = reader.next_ints();
    if (reader.eof()) throw ParseError(reader.line(), 0, "missing header 'V r'");
    reader.expect_fields(header, 2);
    if (header[0] < 1 || header[0] > 1'000'000) reader.fail(1, "vertex count out of range");
    if (header[1] < 0) reader.fail(2, "negative r");
    const int V = static_cast<int>(header[0]);
    std::vector<ColoredEdge> edges;
    std::optional<bool> colored;
    for (;;) {
        auto row = reader.next_ints();
        if (reader.eof()) break;
        reader.expect_fields(row, 3);
        for (std::size_t k = 0; k < 2; ++k)
            if (row[k] < 1 || row[k] > V) reader.fail(k + 1, "vertex " + std::to_string(row[k]) + " out of range");
        const bool this_colored = row[2] != kUncolored;
        if (colored && *colored != this_colored) reader.fail(3, "mixes colored and uncolored edges");
        colored = this_colored;
        if (this_colored && (row[2] <= V || row[2] > 2 * static_cast<std::int64_t>(V)))
            reader.fail(3, "color " + std::to_string(row[2]) + " outside [" + std::to_string(V + 1) + "," +
                               std::to_string(2 * V) + "]");
        edges.emplace_back(static_cast<Vertex>(row[0]), static_cast<Vertex>(row[1]), static_cast<Color>(row[2]));
    }
    const int palette = colored.value_or(true) ? V : 0;
    return MultigraphFile{ColoredMultigraph(V, palette, std::move(edges)), static_cast<int>(header[1])};
}

inline void write_multigraph(std::ostream& out, const ColoredMultigraph& g, int r) {
    out << g.vertex_count() << ' ' << r << '\n';
    for (const ColoredEdge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.color << '\n';
}

// Certificate file: first line the vertex order, second line the step colors.

inline RainbowCycleCert read_rainbow_cert(std::istream& in) {
    LooseCycle raw = read_loose_cycle(in);
    return RainbowCycleCert{raw.links, raw.middles};
}

inline void write_rainbow_cert(std::ostream& out, const RainbowCycleCert& cert) {
    write_loose_cycle(out, LooseCycle{cert.order, cert.colors});
}

}  // namespace loosehc
