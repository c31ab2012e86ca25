#pragma once

// Perfect matchings of triple systems and rainbow Hamilton cycles of colored
// multigraphs: a complete engine and an incomplete randomized engine for each.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "colorgraph.hpp"
#include "rng.hpp"
#include "sample.hpp"

namespace loosehc {

struct PerfectMatching {
    std::vector<SlotTriple> triples;

    bool operator==(const PerfectMatching&) const = default;
};

/// The pairs partition X, the slots partition Y, and every triple is present.
inline bool verify_matching(const TripleSystem& ts, const PerfectMatching& pm) {
    const int m = ts.m();
    if (pm.triples.size() != static_cast<std::size_t>(m)) return false;
    std::vector<char> vertex(static_cast<std::size_t>(2 * m) + 1, 0), slot(static_cast<std::size_t>(m), 0);
    for (const SlotTriple& t : pm.triples) {
        if (!ts.has(t)) return false;
        if (vertex[t.x] || vertex[t.y] || slot[static_cast<std::size_t>(t.slot)]) return false;
        vertex[t.x] = vertex[t.y] = 1;
        slot[static_cast<std::size_t>(t.slot)] = 1;
    }
    return true;
}

/// Dancing-links exact cover over columns [0, columns) and rows given as column lists.
class ExactCover {
public:
    ExactCover(int columns, const std::vector<std::vector<int>>& rows) : columns_(columns) {
        const int header_count = columns + 1;  // node 0 is the root
        nodes_.resize(static_cast<std::size_t>(header_count));
        size_.assign(static_cast<std::size_t>(columns), 0);
        for (int c = 0; c <= columns; ++c) {
            Node& h = nodes_[static_cast<std::size_t>(c)];
            h.left = c == 0 ? columns : c - 1;
            h.right = c == columns ? 0 : c + 1;
            h.up = h.down = c;
            h.column = c - 1;
            h.row = -1;
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            int first = -1;
            for (int col : rows[r]) {
                if (col < 0 || col >= columns) throw std::out_of_range("exact cover column out of range");
                const int header = col + 1;
                const int id = static_cast<int>(nodes_.size());
                Node node;
                node.column = col;
                node.row = static_cast<int>(r);
                node.down = header;
                node.up = nodes_[static_cast<std::size_t>(header)].up;
                if (first < 0) {
                    node.left = node.right = id;
                    first = id;
                } else {
                    node.right = first;
                    node.left = nodes_[static_cast<std::size_t>(first)].left;
                }
                nodes_.push_back(node);
                nodes_[static_cast<std::size_t>(node.up)].down = id;
                nodes_[static_cast<std::size_t>(header)].up = id;
                if (first != id) {
                    nodes_[static_cast<std::size_t>(node.left)].right = id;
                    nodes_[static_cast<std::size_t>(first)].left = id;
                }
                ++size_[static_cast<std::size_t>(col)];
            }
        }
    }

    /// Row indices of one exact cover, if any.
    std::optional<std::vector<int>> solve() {
        chosen_.clear();
        if (search()) return chosen_;
        return std::nullopt;
    }

    std::uint64_t steps() const { return steps_; }

private:
    struct Node {
        int left = 0, right = 0, up = 0, down = 0;
        int column = -1;
        int row = -1;
    };

    Node& at(int i) { return nodes_[static_cast<std::size_t>(i)]; }

    void cover(int col) {
        const int h = col + 1;
        at(at(h).right).left = at(h).left;
        at(at(h).left).right = at(h).right;
        for (int i = at(h).down; i != h; i = at(i).down)
            for (int j = at(i).right; j != i; j = at(j).right) {
                at(at(j).down).up = at(j).up;
                at(at(j).up).down = at(j).down;
                --size_[static_cast<std::size_t>(at(j).column)];
            }
    }

    void uncover(int col) {
        const int h = col + 1;
        for (int i = at(h).up; i != h; i = at(i).up)
            for (int j = at(i).left; j != i; j = at(j).left) {
                ++size_[static_cast<std::size_t>(at(j).column)];
                at(at(j).down).up = j;
                at(at(j).up).down = j;
            }
        at(at(h).right).left = h;
        at(at(h).left).right = h;
    }

    bool search() {
        ++steps_;
        if (at(0).right == 0) return true;
        // most constrained column, lowest index on ties
        int best = -1;
        int best_size = std::numeric_limits<int>::max();
        for (int h = at(0).right; h != 0; h = at(h).right) {
            const int s = size_[static_cast<std::size_t>(h - 1)];
            if (s < best_size) {
                best_size = s;
                best = h - 1;
                if (s == 0) break;
            }
        }
        if (best_size == 0) return false;
        cover(best);
        for (int i = at(best + 1).down; i != best + 1; i = at(i).down) {
            chosen_.push_back(at(i).row);
            for (int j = at(i).right; j != i; j = at(j).right) cover(at(j).column);
            if (search()) return true;
            for (int j = at(i).left; j != i; j = at(j).left) uncover(at(j).column);
            chosen_.pop_back();
        }
        uncover(best);
        return false;
    }

    int columns_;
    std::vector<Node> nodes_;
    std::vector<int> size_;
    std::vector<int> chosen_;
    std::uint64_t steps_ = 0;
};

struct ExactMatchingOptions {
    int max_m = 64;
    std::size_t max_triples = 2'000'000;  ///< density guard
};

/// Complete search framed as exact cover: columns are the 2m vertices of X and
/// the m slots of Y, rows the present triples.
inline std::optional<PerfectMatching> exact_matching(const TripleSystem& ts, const ExactMatchingOptions& opt = {},
                                                     std::uint64_t* steps = nullptr) {
    const int m = ts.m();
    if (m > opt.max_m) throw std::length_error("m=" + std::to_string(m) + " exceeds exact matching cap " + std::to_string(opt.max_m));
    if (ts.present().size() > opt.max_triples) throw std::length_error("triple system too dense for exact matching");
    std::vector<std::vector<int>> rows;
    rows.reserve(ts.present().size());
    for (const SlotTriple& t : ts.present()) rows.push_back({t.x - 1, t.y - 1, 2 * m + t.slot});
    ExactCover dlx(3 * m, rows);
    auto picked = dlx.solve();
    if (steps) *steps = dlx.steps();
    if (!picked) return std::nullopt;
    PerfectMatching pm;
    for (int r : *picked) pm.triples.push_back(ts.present()[static_cast<std::size_t>(r)]);
    std::sort(pm.triples.begin(), pm.triples.end());
    return pm;
}

/// Randomized greedy construction followed by an eviction walk: an uncovered
/// slot takes one of its triples and evicts whatever it collides with; now and
/// then two matched triples are swapped for two others on the same six
/// elements. Returns only verified matchings. `budget` counts walk steps.
inline std::optional<PerfectMatching> heuristic_matching(const TripleSystem& ts, std::uint64_t budget, Rng& rng,
                                                         std::uint64_t* steps = nullptr) {
    const int m = ts.m();
    const auto& present = ts.present();
    if (steps) *steps = 0;
    std::vector<std::vector<int>> by_slot(static_cast<std::size_t>(m));
    std::vector<int> vertex_degree(static_cast<std::size_t>(2 * m) + 1, 0);
    for (std::size_t i = 0; i < present.size(); ++i) {
        by_slot[static_cast<std::size_t>(present[i].slot)].push_back(static_cast<int>(i));
        ++vertex_degree[present[i].x];
        ++vertex_degree[present[i].y];
    }
    for (const auto& s : by_slot)
        if (s.empty()) return std::nullopt;
    for (int v = 1; v <= 2 * m; ++v)
        if (vertex_degree[static_cast<std::size_t>(v)] == 0) return std::nullopt;

    std::vector<int> vertex_owner(static_cast<std::size_t>(2 * m) + 1, -1);
    std::vector<int> slot_owner(static_cast<std::size_t>(m), -1);
    int matched = 0;

    auto remove = [&](int idx) {
        const SlotTriple& t = present[static_cast<std::size_t>(idx)];
        vertex_owner[t.x] = vertex_owner[t.y] = -1;
        slot_owner[static_cast<std::size_t>(t.slot)] = -1;
        --matched;
    };
    auto insert = [&](int idx) {
        const SlotTriple& t = present[static_cast<std::size_t>(idx)];
        vertex_owner[t.x] = vertex_owner[t.y] = idx;
        slot_owner[static_cast<std::size_t>(t.slot)] = idx;
        ++matched;
    };
    auto conflicts = [&](int idx) {
        const SlotTriple& t = present[static_cast<std::size_t>(idx)];
        const int a = vertex_owner[t.x], b = vertex_owner[t.y];
        return (a >= 0) + (b >= 0 && b != a);
    };

    std::vector<int> order(present.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    rng.shuffle(std::span<int>(order));
    for (int idx : order)
        if (conflicts(idx) == 0 && slot_owner[static_cast<std::size_t>(present[static_cast<std::size_t>(idx)].slot)] < 0)
            insert(idx);

    auto finish = [&]() -> std::optional<PerfectMatching> {
        PerfectMatching pm;
        for (int s = 0; s < m; ++s) pm.triples.push_back(present[static_cast<std::size_t>(slot_owner[static_cast<std::size_t>(s)])]);
        std::sort(pm.triples.begin(), pm.triples.end());
        if (!verify_matching(ts, pm)) return std::nullopt;
        return pm;
    };

    auto try_swap = [&]() {
        if (matched < 2) return;
        const int s1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
        const int s2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
        const int i1 = slot_owner[static_cast<std::size_t>(s1)], i2 = slot_owner[static_cast<std::size_t>(s2)];
        if (s1 == s2 || i1 < 0 || i2 < 0) return;
        const SlotTriple a = present[static_cast<std::size_t>(i1)], b = present[static_cast<std::size_t>(i2)];
        const Vertex pairs[2][4] = {{a.x, b.x, a.y, b.y}, {a.x, b.y, a.y, b.x}};
        const int start = static_cast<int>(rng.below(4));
        for (int k = 0; k < 4; ++k) {
            const int option = (start + k) % 4;
            const Vertex* pr = pairs[option / 2];
            const int slot_first = (option % 2 == 0) ? s1 : s2;
            const int slot_second = (option % 2 == 0) ? s2 : s1;
            const SlotTriple c(pr[0], pr[1], slot_first), d(pr[2], pr[3], slot_second);
            const auto lookup = [&](const SlotTriple& t) {
                auto it = std::lower_bound(present.begin(), present.end(), t);
                return (it != present.end() && *it == t) ? static_cast<int>(it - present.begin()) : -1;
            };
            const int ic = lookup(c), id = lookup(d);
            if (ic >= 0 && id >= 0) {
                remove(i1);
                remove(i2);
                insert(ic);
                insert(id);
                return;
            }
        }
    };

    for (std::uint64_t step = 0; step < budget; ++step) {
        if (steps) *steps = step + 1;
        if (matched == m) return finish();
        if (rng.below(16) == 0) {
            try_swap();
            continue;
        }
        int slot = -1;
        for (std::uint64_t tries = 0; slot < 0; ++tries) {
            const int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
            if (slot_owner[static_cast<std::size_t>(s)] < 0) slot = s;
        }
        const auto& cand = by_slot[static_cast<std::size_t>(slot)];
        int pick = -1;
        if (rng.below(5) == 0) {
            pick = cand[rng.below(cand.size())];
        } else {
            int fewest = 3;
            std::uint64_t ties = 0;
            for (int idx : cand) {
                const int k = conflicts(idx);
                if (k < fewest) {
                    fewest = k;
                    pick = idx;
                    ties = 1;
                } else if (k == fewest && rng.below(++ties) == 0) {
                    pick = idx;
                }
            }
        }
        const SlotTriple& t = present[static_cast<std::size_t>(pick)];
        const int a = vertex_owner[t.x], b = vertex_owner[t.y];
        if (a >= 0) remove(a);
        if (b >= 0 && b != a) remove(b);
        insert(pick);
    }
    if (matched == m) return finish();
    return std::nullopt;
}

struct ExactRainbowOptions {
    int cap = 20;  ///< refuse graphs with more vertices
};

namespace detail {

constexpr int kRainbowHardCap = 30;

class RainbowSearch {
public:
    RainbowSearch(const ColoredMultigraph& g, bool prune) : g_(g), V_(g.vertex_count()), prune_(prune) {
        for (Vertex v = 1; v <= V_; ++v)
            for (const auto& inc : g.incident(v))
                if (inc.other != v) edges_[v].push_back({inc.other, static_cast<int>(g.color_index(inc.color))});
    }

    std::optional<RainbowCycleCert> run() {
        if (V_ < 2 || g_.color_count() < V_) return std::nullopt;
        path_ = {1};
        colors_.clear();
        visited_ = 1ULL << 1;
        used_ = 0;
        if (dfs(1)) {
            RainbowCycleCert cert;
            cert.order = path_;
            for (int c : colors_) cert.colors.push_back(g_.first_color() + c);
            return cert;
        }
        return std::nullopt;
    }

    std::uint64_t steps() const { return steps_; }

private:
    struct Arc {
        Vertex to;
        int color;
    };

    bool usable_color(int c) const { return !(used_ >> c & 1ULL); }
    bool visited(Vertex v) const { return visited_ >> v & 1ULL; }

    bool dfs(Vertex cur) {
        ++steps_;
        const auto depth = static_cast<int>(path_.size());
        if (depth == V_) {
            if (V_ >= 3 && path_[1] > path_.back()) return false;
            for (const Arc& a : edges_[cur])
                if (a.to == 1 && usable_color(a.color)) {
                    colors_.push_back(a.color);
                    return true;
                }
            return false;
        }
        if (prune_ && V_ >= 3 && !viable(cur)) return false;
        for (const Arc& a : edges_[cur]) {
            if (visited(a.to) || !usable_color(a.color)) continue;
            path_.push_back(a.to);
            colors_.push_back(a.color);
            visited_ |= 1ULL << a.to;
            used_ |= 1ULL << a.color;
            if (dfs(a.to)) return true;
            used_ &= ~(1ULL << a.color);
            visited_ &= ~(1ULL << a.to);
            colors_.pop_back();
            path_.pop_back();
        }
        return false;
    }

    bool viable(Vertex cur) const {
        const Vertex start = 1;
        const auto depth = static_cast<int>(path_.size());
        // canonical orientation: the last vertex must exceed the second
        if (depth >= 2) {
            bool larger = false;
            for (Vertex v = path_[1] + 1; v <= V_ && !larger; ++v) larger = !visited(v);
            if (!larger) return false;
        }
        if (std::popcount(~used_ & color_mask()) < V_ - depth + 1) return false;
        auto open_end = [&](Vertex w) { return !visited(w) || w == cur || w == start; };
        // every unvisited vertex needs two usable edges to distinct open vertices in distinct colors
        for (Vertex v = 1; v <= V_; ++v) {
            if (visited(v)) continue;
            const auto& arcs = edges_[v];
            bool ok = false;
            for (std::size_t i = 0; i < arcs.size() && !ok; ++i) {
                if (!open_end(arcs[i].to) || !usable_color(arcs[i].color)) continue;
                for (std::size_t j = i + 1; j < arcs.size(); ++j)
                    if (open_end(arcs[j].to) && usable_color(arcs[j].color) && arcs[j].to != arcs[i].to &&
                        arcs[j].color != arcs[i].color) {
                        ok = true;
                        break;
                    }
            }
            if (!ok) return false;
        }
        // unvisited vertices reachable from cur through unvisited vertices, and start touches them
        std::uint64_t reached = 0;
        std::vector<Vertex> stack = {cur};
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            for (const Arc& a : edges_[v])
                if (!visited(a.to) && usable_color(a.color) && !(reached >> a.to & 1ULL)) {
                    reached |= 1ULL << a.to;
                    stack.push_back(a.to);
                }
        }
        std::uint64_t unvisited = 0;
        for (Vertex v = 1; v <= V_; ++v)
            if (!visited(v)) unvisited |= 1ULL << v;
        if ((reached & unvisited) != unvisited) return false;
        bool start_touch = false;
        for (const Arc& a : edges_[start])
            if (!visited(a.to) && usable_color(a.color)) {
                start_touch = true;
                break;
            }
        return start_touch;
    }

    std::uint64_t color_mask() const {
        const int c = g_.color_count();
        return c >= 64 ? ~0ULL : ((1ULL << c) - 1);
    }

    const ColoredMultigraph& g_;
    int V_;
    bool prune_;
    std::vector<Arc> edges_[kRainbowHardCap + 1];
    std::vector<Vertex> path_;
    std::vector<int> colors_;
    std::uint64_t visited_ = 0;
    std::uint64_t used_ = 0;
    std::uint64_t steps_ = 0;
};

}  // namespace detail

/// Complete backtracking over (next vertex, color) extensions from vertex 1.
/// Throws std::length_error above the vertex cap or with more than 64 colors.
inline std::optional<RainbowCycleCert> exact_rainbow_hamilton(const ColoredMultigraph& g, const ExactRainbowOptions& opt = {},
                                                              std::uint64_t* steps = nullptr) {
    const int cap = std::min(opt.cap, detail::kRainbowHardCap);
    if (g.vertex_count() > cap)
        throw std::length_error("2m=" + std::to_string(g.vertex_count()) + " exceeds exact rainbow cap " + std::to_string(cap));
    if (g.color_count() > 64) throw std::length_error("exact rainbow search supports at most 64 colors");
    if (steps) *steps = 0;
    if (!g.colored()) return std::nullopt;
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
        if (g.degree(v) == 0) return std::nullopt;
    detail::RainbowSearch search(g, true);
    auto cert = search.run();
    if (steps) *steps = search.steps();
    if (cert && !verify_rainbow_hamilton(g, *cert)) throw std::logic_error("rainbow search produced an invalid certificate");
    return cert;
}

/// Rotation-based local search over rainbow paths. Moves: extend the path end
/// along an unused color; rotate at a visited neighbour (the broken edge's
/// color is released); recolor a path edge onto an unused parallel color;
/// reverse the path; as a last resort cut the path at the edge holding a
/// wanted color. Incomplete; returns only verified certificates.
inline std::optional<RainbowCycleCert> heuristic_rainbow_hamilton(const ColoredMultigraph& g, std::uint64_t budget, Rng& rng,
                                                                  std::uint64_t* steps = nullptr) {
    if (steps) *steps = 0;
    const int V = g.vertex_count();
    if (V < 2 || !g.colored() || g.color_count() < V) return std::nullopt;
    for (Vertex v = 1; v <= V; ++v)
        if (g.degree(v) - 2 * static_cast<int>(std::count_if(g.incident(v).begin(), g.incident(v).end(),
                                                               [v](const auto& inc) { return inc.other == v; })) < 2)
            return std::nullopt;

    std::vector<Vertex> path;
    std::vector<Color> colors;  // colors[i] joins path[i] and path[i+1]
    std::vector<int> pos(static_cast<std::size_t>(V) + 1, -1);
    std::vector<int> color_at(static_cast<std::size_t>(g.color_count()), -1);  // path edge index holding the color

    auto reset = [&](Vertex start) {
        path.assign(1, start);
        colors.clear();
        std::fill(pos.begin(), pos.end(), -1);
        std::fill(color_at.begin(), color_at.end(), -1);
        pos[static_cast<std::size_t>(start)] = 0;
    };
    auto reindex = [&]() {
        std::fill(pos.begin(), pos.end(), -1);
        std::fill(color_at.begin(), color_at.end(), -1);
        for (std::size_t i = 0; i < path.size(); ++i) pos[static_cast<std::size_t>(path[i])] = static_cast<int>(i);
        for (std::size_t i = 0; i < colors.size(); ++i) color_at[g.color_index(colors[i])] = static_cast<int>(i);
    };
    auto free_color = [&](Color c) { return color_at[g.color_index(c)] < 0; };

    auto try_close = [&]() -> std::optional<RainbowCycleCert> {
        for (const auto& inc : g.incident(path.back()))
            if (inc.other == path.front() && inc.other != path.back() && free_color(inc.color)) {
                RainbowCycleCert cert{path, colors};
                cert.colors.push_back(inc.color);
                if (verify_rainbow_hamilton(g, cert)) return cert;
            }
        if (V == 2 && path.size() == 2) {
            for (const auto& inc : g.incident(path.back()))
                if (inc.other == path.front() && inc.color != colors[0]) {
                    RainbowCycleCert cert{path, {colors[0], inc.color}};
                    if (verify_rainbow_hamilton(g, cert)) return cert;
                }
        }
        return std::nullopt;
    };

    reset(static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(V))));
    std::size_t best = 1;
    std::uint64_t stale = 0;
    const std::uint64_t restart_after = 50ULL * static_cast<std::uint64_t>(V) * static_cast<std::uint64_t>(V);

    struct Move {
        int kind;  // 0 extend, 1 rotate, 2 recolor-then-extend, 3 cut
        Vertex to;
        Color color;
        int aux;
    };
    std::vector<Move> moves;

    for (std::uint64_t step = 0; step < budget; ++step) {
        if (steps) *steps = step + 1;
        if (static_cast<int>(path.size()) == V) {
            if (auto cert = try_close()) return cert;
        }
        if (path.size() > best) {
            best = path.size();
            stale = 0;
        } else if (++stale > restart_after) {
            reset(static_cast<Vertex>(1 + rng.below(static_cast<std::uint64_t>(V))));
            best = 1;
            stale = 0;
            continue;
        }

        // occasional recolor of a random path edge onto an unused parallel color
        if (!colors.empty() && rng.below(8) == 0) {
            const auto k = static_cast<std::size_t>(rng.below(colors.size()));
            std::vector<Color> alt;
            for (const auto& inc : g.incident(path[k]))
                if (inc.other == path[k + 1] && free_color(inc.color)) alt.push_back(inc.color);
            if (!alt.empty()) {
                color_at[g.color_index(colors[k])] = -1;
                colors[k] = alt[rng.below(alt.size())];
                color_at[g.color_index(colors[k])] = static_cast<int>(k);
            }
            continue;
        }

        const Vertex end = path.back();
        moves.clear();
        bool has_extend = false;
        for (const auto& inc : g.incident(end)) {
            if (inc.other == end) continue;
            const int p = pos[static_cast<std::size_t>(inc.other)];
            const int holder = color_at[g.color_index(inc.color)];
            if (p < 0) {
                if (holder < 0) {
                    moves.push_back({0, inc.other, inc.color, -1});
                    has_extend = true;
                } else {
                    moves.push_back({3, inc.other, inc.color, holder});
                }
            } else if (p + 2 < static_cast<int>(path.size())) {
                if (holder < 0 || holder == p) moves.push_back({1, inc.other, inc.color, p});
            }
        }
        if (moves.empty()) {
            std::reverse(path.begin(), path.end());
            std::reverse(colors.begin(), colors.end());
            reindex();
            continue;
        }
        Move mv{};
        if (has_extend && rng.below(10) != 0) {
            std::size_t count = 0;
            for (const Move& c : moves)
                if (c.kind == 0 && rng.below(++count) == 0) mv = c;
        } else {
            std::size_t count = 0;
            for (const Move& c : moves)
                if (c.kind != 3 && rng.below(++count) == 0) mv = c;
            if (count == 0 || rng.below(20) == 0) mv = moves[rng.below(moves.size())];
        }

        switch (mv.kind) {
            case 0:
                color_at[g.color_index(mv.color)] = static_cast<int>(colors.size());
                colors.push_back(mv.color);
                pos[static_cast<std::size_t>(mv.to)] = static_cast<int>(path.size());
                path.push_back(mv.to);
                break;
            case 1: {
                // path[0..p], end, ..., path[p+1]; edge (path[p], path[p+1]) is dropped
                const auto p = static_cast<std::size_t>(mv.aux);
                std::reverse(path.begin() + static_cast<std::ptrdiff_t>(p) + 1, path.end());
                std::vector<Color> rebuilt(colors.begin(), colors.begin() + static_cast<std::ptrdiff_t>(p));
                rebuilt.push_back(mv.color);
                rebuilt.insert(rebuilt.end(), colors.rbegin(), colors.rend() - static_cast<std::ptrdiff_t>(p) - 1);
                colors = std::move(rebuilt);
                reindex();
                break;
            }
            case 3: {
                // try recoloring the holder edge first, otherwise cut the prefix through it
                const auto k = static_cast<std::size_t>(mv.aux);
                Color alt = kUncolored;
                for (const auto& inc : g.incident(path[k]))
                    if (inc.other == path[k + 1] && free_color(inc.color)) {
                        alt = inc.color;
                        break;
                    }
                if (alt != kUncolored) {
                    colors[k] = alt;
                } else {
                    path.erase(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(k) + 1);
                    colors.erase(colors.begin(), colors.begin() + static_cast<std::ptrdiff_t>(k) + 1);
                    best = std::min(best, path.size());
                }
                reindex();
                color_at[g.color_index(mv.color)] = static_cast<int>(colors.size());
                colors.push_back(mv.color);
                pos[static_cast<std::size_t>(mv.to)] = static_cast<int>(path.size());
                path.push_back(mv.to);
                break;
            }
            default:
                break;
        }
    }
    if (static_cast<int>(path.size()) == V) return try_close();
    return std::nullopt;
}

}  // namespace loosehc
