// SPDX-License-Identifier: Apache-2.0
#include "frobcirc/scheduler.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "frobcirc/error.hpp"

namespace frobcirc {

namespace {

Residue cell_vertex(std::uint64_t n, Residue a, std::uint64_t i, std::uint64_t j) {
    return add_mod(i % n, mul_mod(j % n, a, n), n);
}

bool in_sector(const DistanceDiagram& d, std::int64_t i, std::int64_t j) {
    if (i < 1 || j < 0 || j > static_cast<std::int64_t>(d.r)) return false;
    return i <= static_cast<std::int64_t>(d.profile[static_cast<std::size_t>(j)]);
}

}  // namespace

std::uint32_t DistanceDiagram::diameter() const {
    std::uint32_t best = 0;
    for (std::size_t j = 0; j < profile.size(); ++j)
        best = std::max(best, profile[j] + static_cast<std::uint32_t>(j));
    return best;
}

DistanceDiagram build_diagram(const FrobeniusCirculant& g) {
    const auto n = g.order();
    require(n <= kMaxDiagramOrder, "build_diagram: order " + std::to_string(n) + " exceeds the diagram limit");
    const Residue a = g.generator();
    const auto& powers = g.powers();

    DistanceDiagram out;
    out.n = n;
    out.a = a;
    std::vector<bool> covered(n, false);
    covered[0] = true;
    std::uint64_t count = 0;
    const std::uint64_t ring_limit = std::uint64_t{diameter_upper_bound(n)} + 2;
    for (std::uint64_t ring = 1; count < n - 1; ++ring) {
        ensure(ring <= ring_limit, "build_diagram: sweep did not terminate");
        for (std::uint64_t i = ring; i >= 1 && count < n - 1; --i) {
            const std::uint64_t j = ring - i;
            const Residue v = cell_vertex(n, a, i, j);
            if (covered[v]) continue;
            for (auto h : powers) {
                const Residue w = mul_mod(v, h, n);
                ensure(!covered[w], "build_diagram: orbits overlap");
                covered[w] = true;
            }
            count += 6;
            out.sector.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), v});
        }
    }

    std::uint32_t max_j = 0;
    for (const auto& c : out.sector) max_j = std::max(max_j, c.j);
    out.r = 0;
    for (const auto& c : out.sector)
        if (c.j == 0) out.r = std::max(out.r, c.i);
    ensure(max_j <= out.r, "build_diagram: row index exceeds r");
    out.profile.assign(out.r + 1, 0);
    std::vector<std::uint32_t> rows(out.r + 1, 0);
    for (const auto& c : out.sector) {
        out.profile[c.j] = std::max(out.profile[c.j], c.i);
        ++rows[c.j];
    }
    std::uint64_t sum = 0;
    for (std::uint32_t j = 0; j <= out.r; ++j) {
        ensure(rows[j] == out.profile[j], "build_diagram: row is not an initial segment");
        ensure(j == 0 || out.profile[j] <= out.profile[j - 1], "build_diagram: profile is not monotone");
        sum += out.profile[j];
    }
    ensure(sum == (n - 1) / 6, "build_diagram: profile does not sum to (n - 1) / 6");
    return out;
}

std::vector<HexCell> hexagonal_coordinates(const FrobeniusCirculant& g, const DistanceDiagram& d) {
    std::vector<HexCell> out;
    out.reserve(6 * d.sector.size());
    for (std::uint32_t k = 0; k < 6; ++k)
        for (const auto& c : d.sector)
            out.push_back({c.i, c.j, k, mul_mod(c.vertex, g.powers()[k], g.order())});
    return out;
}

std::vector<std::uint64_t> type_vector(const DistanceDiagram& d) {
    std::vector<std::uint64_t> out(d.diameter(), 0);
    for (const auto& c : d.sector) ++out[c.distance() - 1];
    return out;
}

std::vector<std::uint64_t> type_vector_from_cd(CanonicalPair cd, std::uint64_t n) {
    const std::int64_t c = cd.c, dd = cd.d;
    require(c >= dd && dd >= 0 && c > 0, "type_vector_from_cd: (c, d) is not canonical");
    require(static_cast<std::uint64_t>(c * c + c * dd + dd * dd) == n, "type_vector_from_cd: N(c + dρ) != n");
    require((c - dd) % 3 != 0, "type_vector_from_cd: c ≡ d (mod 3)");
    const std::int64_t D = (2 * c + dd) / 3;
    std::vector<std::uint64_t> out(static_cast<std::size_t>(D), 0);
    for (std::int64_t t = 1; t <= D; ++t) {
        std::int64_t v;
        if (2 * t < c + dd) {
            v = t;
        } else if (2 * t > c + dd) {
            v = (2 * c + dd) - 3 * t;
        } else {
            const std::int64_t six = static_cast<std::int64_t>(n) - 1 - 6 * D * (2 * c + dd) + 9 * D * (D + 1) +
                                     3 * (c - 1) * (c + dd);
            ensure(six % 6 == 0, "type_vector_from_cd: midpoint count is not a multiple of 6");
            v = six / 6;
        }
        ensure(v >= 0, "type_vector_from_cd: negative count");
        out[static_cast<std::size_t>(t - 1)] = static_cast<std::uint64_t>(v);
    }
    return out;
}

std::uint64_t forwarding_index(const DistanceDiagram& d) {
    std::uint64_t pi = 0;
    for (std::uint64_t j = 0; j < d.profile.size(); ++j) {
        const std::uint64_t ij = d.profile[j];
        pi += ij * (ij + 2 * j + 1);
    }
    return pi;
}

std::uint64_t forwarding_index_from_type(const std::vector<std::uint64_t>& type) {
    std::uint64_t s = 0;
    for (std::size_t t = 0; t < type.size(); ++t) s += (t + 1) * type[t];
    return 2 * s;
}

double forwarding_index_closed_form(CanonicalPair cd, std::uint64_t n) {
    const double c = static_cast<double>(cd.c), d = static_cast<double>(cd.d);
    const double D = static_cast<double>((2 * cd.c + cd.d) / 3);
    if ((cd.c + cd.d) % 2 != 0)
        return D * (D + 1) * ((2 * c + d) - (2 * D + 1)) - (2 * c - d) * ((c + d) * (c + d) - 1) / 12.0;
    return 0.5 * D * (D + 1) * ((7 * c + 5 * d) - 2 * (2 * D + 1)) + (c + d) * (c + d) * (4 * c + d - 6) / 12.0 +
           (static_cast<double>(n) - 3 * c - 5 - 6 * D * (2 * c + d)) / 6.0;
}

std::uint64_t wiener_index(std::uint64_t n, std::uint64_t pi) {
    require(pi % 2 == 0, "wiener_index: forwarding index must be even");
    const unsigned __int128 w = static_cast<unsigned __int128>(3 * static_cast<unsigned __int128>(n)) * (pi / 2);
    require(w <= std::numeric_limits<std::uint64_t>::max(), "wiener_index: value exceeds 64 bits");
    return static_cast<std::uint64_t>(w);
}

std::uint64_t gossip_time(const FrobeniusCirculant& g) { return (g.order() - 1) / 6; }

SpanningTree build_spanning_tree(const FrobeniusCirculant& g, const DistanceDiagram& d) {
    const auto n = g.order();
    require(d.n == n && d.a == g.generator(), "build_spanning_tree: diagram belongs to another graph");
    SpanningTree t;
    t.n = n;
    t.parent.assign(n, 0);
    t.level.assign(n, 0);

    std::vector<YCell> cells = d.sector;
    std::sort(cells.begin(), cells.end(), [](const YCell& x, const YCell& y) {
        if (x.distance() != y.distance()) return x.distance() < y.distance();
        if (x.j != y.j) return x.j < y.j;
        return x.i < y.i;
    });
    for (const auto& c : cells) {
        const std::int64_t i = c.i, j = c.j;
        Residue p = 0;
        if (in_sector(d, i - 1, j))
            p = cell_vertex(n, d.a, static_cast<std::uint64_t>(i - 1), static_cast<std::uint64_t>(j));
        else if (in_sector(d, i, j - 1))
            p = cell_vertex(n, d.a, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j - 1));
        else if (in_sector(d, i + 1, j - 1))
            p = cell_vertex(n, d.a, static_cast<std::uint64_t>(i + 1), static_cast<std::uint64_t>(j - 1));
        else
            ensure(i == 1 && j == 0, "build_spanning_tree: no parent for a Y cell");

        TreeBranch b{c, p, {}};
        for (std::size_t k = 0; k < 6; ++k) {
            const Residue h = g.powers()[k];
            const Residue child = mul_mod(c.vertex, h, n);
            const Residue parent = mul_mod(p, h, n);
            b.arcs[k] = {parent, child};
            t.parent[child] = parent;
            t.level[child] = c.distance();
        }
        t.branches.push_back(b);
    }
    for (Residue v = 1; v < n; ++v)
        ensure(t.level[t.parent[v]] + 1 == t.level[v], "build_spanning_tree: parent is not one level up");
    return t;
}

std::vector<Residue> route(const SpanningTree& t, Residue u, Residue v) {
    require(u < t.n && v < t.n, "route: vertex out of range");
    std::vector<Residue> path;
    Residue w = sub_mod(v, u, t.n);
    path.push_back(w);
    while (w != 0) {
        w = t.parent[w];
        path.push_back(w);
    }
    std::reverse(path.begin(), path.end());
    for (auto& x : path) x = add_mod(x, u, t.n);
    return path;
}

RoutingLoads routing_loads(const FrobeniusCirculant& g, const SpanningTree& t) {
    const auto n = g.order();
    std::vector<Residue> order(n);
    std::iota(order.begin(), order.end(), Residue{0});
    std::sort(order.begin(), order.end(), [&](Residue x, Residue y) { return t.level[x] > t.level[y]; });
    std::vector<std::uint64_t> subtree(n, 1);
    RoutingLoads out;
    for (auto v : order) {
        if (v == 0) continue;
        subtree[t.parent[v]] += subtree[v];
        const int label = g.as_circulant().arc_label(t.parent[v], v);
        ensure(label >= 0, "routing_loads: tree edge is not an arc");
        out.arc_load[static_cast<std::size_t>(label)] += subtree[v];
    }
    const auto& s = g.connection_set();
    out.max_arc_load = *std::max_element(out.arc_load.begin(), out.arc_load.end());
    out.arc_uniform = std::all_of(out.arc_load.begin(), out.arc_load.end(),
                                  [&](std::uint64_t x) { return x == out.arc_load[0]; });
    std::array<std::uint64_t, 6> edge{};
    for (std::size_t k = 0; k < 6; ++k) {
        const int opposite = g.as_circulant().arc_label(s[k], 0);
        edge[k] = out.arc_load[k] + out.arc_load[static_cast<std::size_t>(opposite)];
    }
    out.max_edge_load = *std::max_element(edge.begin(), edge.end());
    out.edge_uniform = std::all_of(edge.begin(), edge.end(), [&](std::uint64_t x) { return x == edge[0]; });
    return out;
}

bool is_shortest_path_tree(const FrobeniusCirculant& g, const SpanningTree& t) {
    const auto dist = bfs_distances(g, 0);
    for (Residue v = 0; v < g.order(); ++v) {
        if (dist[v] != t.level[v]) return false;
        if (v != 0 && !g.as_circulant().is_adjacent(t.parent[v], v)) return false;
    }
    return true;
}

std::vector<Transmission> GossipSchedule::expanded(std::size_t step) const {
    require(step < steps.size(), "GossipSchedule::expanded: step out of range");
    if (!translation_invariant) return steps[step];
    std::vector<Transmission> out;
    out.reserve(steps[step].size() * n);
    for (Residue u = 0; u < n; ++u)
        for (const auto& tr : steps[step])
            out.push_back({add_mod(tr.tail, u, n), add_mod(tr.head, u, n), add_mod(tr.origin, u, n)});
    return out;
}

GossipSchedule GossipSchedule::explicit_form() const {
    GossipSchedule out{n, false, {}};
    for (std::size_t s = 0; s < steps.size(); ++s) out.steps.push_back(expanded(s));
    return out;
}

GossipSchedule gossip_schedule(const FrobeniusCirculant& g, const SpanningTree& t) {
    GossipSchedule out{g.order(), true, {}};
    for (const auto& b : t.branches) {
        std::vector<Transmission> step;
        for (const auto& arc : b.arcs) step.push_back({arc.tail, arc.head, 0});
        out.steps.push_back(std::move(step));
    }
    ensure(out.steps.size() == gossip_time(g), "gossip_schedule: step count differs from (n - 1) / 6");
    return out;
}

BroadcastSchedule broadcast_schedule(const FrobeniusCirculant& g, const DistanceDiagram& d) {
    const auto n = g.order();
    require(d.n == n && d.a == g.generator(), "broadcast_schedule: diagram belongs to another graph");
    const auto& pw = g.powers();
    BroadcastSchedule out;
    out.n = n;
    out.source = 0;

    constexpr std::array<std::uint32_t, 6> kHTime{1, 2, 3, 2, 3, 3};
    const std::array<Residue, 6> h_sender{0, pw[0], pw[1], 0, pw[3], 0};
    for (std::size_t k = 0; k < 6; ++k) out.assignments.push_back({pw[k], kHTime[k], h_sender[k]});

    const std::uint32_t r = d.r;
    for (std::size_t k = 0; k < 6; ++k) {
        auto at = [&](std::uint64_t i, std::uint64_t j) { return mul_mod(cell_vertex(n, d.a, i, j), pw[k], n); };
        for (const auto& c : d.sector) {
            if (c.i == 1 && c.j == 0) continue;
            if (c.j == 0)
                out.assignments.push_back({at(c.i, 0), c.i + 2, at(c.i - 1, 0)});
            else if (c.i <= r - 1)
                out.assignments.push_back({at(c.i, c.j), c.i + c.j + 3, at(c.i, c.j - 1)});
            else
                out.assignments.push_back({at(c.i, c.j), r + c.j + 2, at(r, c.j - 1)});
        }
    }
    std::sort(out.assignments.begin(), out.assignments.end(), [](const auto& x, const auto& y) {
        return x.time != y.time ? x.time < y.time : x.vertex < y.vertex;
    });
    for (const auto& as : out.assignments) out.horizon = std::max(out.horizon, as.time);
    return out;
}

BroadcastSchedule translate(const BroadcastSchedule& s, Residue source) {
    require(source < s.n, "translate: source out of range");
    BroadcastSchedule out = s;
    const Residue shift = sub_mod(source, s.source, s.n);
    out.source = source;
    for (auto& as : out.assignments) {
        as.vertex = add_mod(as.vertex, shift, s.n);
        as.sender = add_mod(as.sender, shift, s.n);
    }
    std::sort(out.assignments.begin(), out.assignments.end(), [](const auto& x, const auto& y) {
        return x.time != y.time ? x.time < y.time : x.vertex < y.vertex;
    });
    return out;
}

namespace {

constexpr std::uint64_t kSearchLimit = 256;

struct Bits {
    std::array<std::uint64_t, 4> w{};

    bool test(std::uint32_t v) const { return (w[v >> 6] >> (v & 63)) & 1; }
    void set(std::uint32_t v) { w[v >> 6] |= std::uint64_t{1} << (v & 63); }
    std::uint32_t count() const {
        std::uint32_t c = 0;
        for (auto x : w) c += static_cast<std::uint32_t>(std::popcount(x));
        return c;
    }
    friend bool operator==(const Bits&, const Bits&) = default;
    friend auto operator<=>(const Bits&, const Bits&) = default;
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const noexcept {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        for (auto x : b.w) h = (h ^ x) * 0x100000001B3ULL + (h >> 29);
        return static_cast<std::size_t>(h);
    }
};

struct BudgetExceeded {};

// Edmonds–Karp style augmenting paths; graphs here have a few hundred nodes.
class FlowNetwork {
public:
    explicit FlowNetwork(std::size_t nodes) : head_(nodes, -1) {}

    void add_edge(std::size_t u, std::size_t v, std::int32_t cap) {
        edges_.push_back({static_cast<std::uint32_t>(v), cap, head_[u]});
        head_[u] = static_cast<std::int32_t>(edges_.size() - 1);
        edges_.push_back({static_cast<std::uint32_t>(u), 0, head_[v]});
        head_[v] = static_cast<std::int32_t>(edges_.size() - 1);
    }

    std::int64_t max_flow(std::size_t s, std::size_t t) {
        std::int64_t total = 0;
        std::vector<std::int32_t> via(head_.size());
        std::vector<std::uint32_t> queue;
        for (;;) {
            std::fill(via.begin(), via.end(), -2);
            via[s] = -1;
            queue.assign(1, static_cast<std::uint32_t>(s));
            for (std::size_t qi = 0; qi < queue.size() && via[t] == -2; ++qi) {
                const auto u = queue[qi];
                for (auto e = head_[u]; e >= 0; e = edges_[static_cast<std::size_t>(e)].next) {
                    const auto& ed = edges_[static_cast<std::size_t>(e)];
                    if (ed.cap > 0 && via[ed.to] == -2) {
                        via[ed.to] = e;
                        queue.push_back(ed.to);
                    }
                }
            }
            if (via[t] == -2) return total;
            std::int32_t push = std::numeric_limits<std::int32_t>::max();
            for (auto v = t; v != s;) {
                const auto& ed = edges_[static_cast<std::size_t>(via[v])];
                push = std::min(push, ed.cap);
                v = edges_[static_cast<std::size_t>(via[v]) ^ 1].to;
            }
            for (auto v = t; v != s;) {
                const auto e = static_cast<std::size_t>(via[v]);
                edges_[e].cap -= push;
                edges_[e ^ 1].cap += push;
                v = edges_[e ^ 1].to;
            }
            total += push;
        }
    }

private:
    struct Edge {
        std::uint32_t to;
        std::int32_t cap;
        std::int32_t next;
    };
    std::vector<std::int32_t> head_;
    std::vector<Edge> edges_;
};

// Informed vertex u with q steps left can inform at most C(q, j) vertices at
// tree depth j, each at graph distance <= j from u, and these trees are disjoint.
class BroadcastSearch {
public:
    BroadcastSearch(const FrobeniusCirculant& g, std::uint32_t steps, std::uint64_t budget)
        : n_(static_cast<std::uint32_t>(g.order())), steps_(steps), budget_(budget), failed_(steps + 1) {
        const auto d0 = bfs_distances(g, 0);
        dist0_.assign(d0.begin(), d0.end());
        for (std::uint32_t v = 0; v < n_; ++v) {
            std::array<std::uint32_t, 6> nb{};
            const auto raw = g.neighbors(v);
            for (std::size_t k = 0; k < 6; ++k) nb[k] = static_cast<std::uint32_t>(raw[k]);
            nbr_.push_back(nb);
        }
        for (auto h : g.powers()) powers_.push_back(static_cast<std::uint32_t>(h));
        for (std::uint32_t q = 0; q <= steps; ++q) {
            binom_.emplace_back(q + 1, 1);
            for (std::uint32_t j = 1; j < q; ++j) binom_[q][j] = binom_[q - 1][j - 1] + binom_[q - 1][j];
        }
    }

    bool run() {
        Bits start;
        start.set(0);
        trail_.clear();
        return dfs(start, 0);
    }

    /// Per step (sender, receiver) pairs of the schedule found by run().
    const std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>& trail() const { return trail_; }

    std::uint64_t nodes() const { return nodes_; }

private:
    std::uint32_t dist(std::uint32_t u, std::uint32_t x) const { return dist0_[x >= u ? x - u : x + n_ - u]; }

    // remaining[v]: steps left for informed v; uninformed vertices outside `informed` must be covered.
    bool relaxation_holds(const Bits& informed, const std::vector<std::uint32_t>& remaining) const {
        std::vector<std::uint32_t> roots, demand;
        std::uint64_t capacity = 0;
        for (std::uint32_t v = 0; v < n_; ++v) {
            if (!informed.test(v)) {
                demand.push_back(v);
            } else if (remaining[v] > 0) {
                roots.push_back(v);
                capacity += (std::uint64_t{1} << remaining[v]) - 1;
            }
        }
        if (demand.empty()) return true;
        if (capacity < demand.size()) return false;
        for (auto x : demand) {
            bool reachable = false;
            for (auto u : roots)
                if (dist(u, x) <= remaining[u]) {
                    reachable = true;
                    break;
                }
            if (!reachable) return false;
        }

        // source, demands, slots (root, depth), sink
        std::vector<std::size_t> slot_base(roots.size());
        std::size_t next = 1 + demand.size();
        for (std::size_t r = 0; r < roots.size(); ++r) {
            slot_base[r] = next;
            next += remaining[roots[r]];
        }
        const std::size_t sink = next;
        FlowNetwork net(sink + 1);
        for (std::size_t x = 0; x < demand.size(); ++x) {
            net.add_edge(0, 1 + x, 1);
            for (std::size_t r = 0; r < roots.size(); ++r) {
                const auto dd = dist(roots[r], demand[x]);
                if (dd <= remaining[roots[r]]) net.add_edge(1 + x, slot_base[r] + dd - 1, 1);
            }
        }
        for (std::size_t r = 0; r < roots.size(); ++r) {
            const auto q = remaining[roots[r]];
            for (std::uint32_t j = 1; j <= q; ++j) {
                const auto node = slot_base[r] + j - 1;
                net.add_edge(node, sink, static_cast<std::int32_t>(binom_[q][j]));
                if (j < q) net.add_edge(node, node + 1, std::numeric_limits<std::int32_t>::max() / 2);
            }
        }
        return net.max_flow(0, sink) == static_cast<std::int64_t>(demand.size());
    }

    // Perfect matching of the uninformed vertices into informed neighbours.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> last_step(const Bits& informed) const {
        std::vector<std::int64_t> owner(n_, -1);  // informed vertex -> receiver
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        for (std::uint32_t x = 0; x < n_; ++x) {
            if (informed.test(x)) continue;
            std::vector<bool> seen(n_, false);
            const auto augment = [&](auto&& self, std::uint32_t y) -> bool {
                for (auto u : nbr_[y]) {
                    if (!informed.test(u) || seen[u]) continue;
                    seen[u] = true;
                    if (owner[u] < 0 || self(self, static_cast<std::uint32_t>(owner[u]))) {
                        owner[u] = y;
                        return true;
                    }
                }
                return false;
            };
            ensure(augment(augment, x), "broadcast search: final step has no matching");
        }
        for (std::uint32_t u = 0; u < n_; ++u)
            if (owner[u] >= 0) out.emplace_back(u, static_cast<std::uint32_t>(owner[u]));
        return out;
    }

    Bits canonical(const Bits& s) const {
        std::vector<std::uint32_t> members;
        for (std::uint32_t v = 0; v < n_; ++v)
            if (s.test(v)) members.push_back(v);
        Bits best;
        bool have = false;
        for (auto h : powers_) {
            std::vector<std::uint32_t> scaled(members.size());
            for (std::size_t i = 0; i < members.size(); ++i)
                scaled[i] = static_cast<std::uint32_t>(std::uint64_t{members[i]} * h % n_);
            for (auto pivot : scaled) {
                Bits img;
                for (auto x : scaled) img.set(x >= pivot ? x - pivot : x + n_ - pivot);
                if (!have || img < best) {
                    best = img;
                    have = true;
                }
            }
        }
        return best;
    }

    bool dfs(const Bits& informed, std::uint32_t t) {
        if (++nodes_ > budget_) throw BudgetExceeded{};
        if (informed.count() == n_) return true;
        const std::uint32_t left = steps_ - t;
        if (left == 0) return false;
        std::vector<std::uint32_t> remaining(n_, 0);
        for (std::uint32_t v = 0; v < n_; ++v)
            if (informed.test(v)) remaining[v] = left;
        if (!relaxation_holds(informed, remaining)) return false;
        if (left == 1) {
            trail_.push_back(last_step(informed));
            return true;
        }

        const Bits key = canonical(informed);
        if (failed_[left].contains(key)) return false;

        std::vector<std::uint32_t> senders;
        for (std::uint32_t v = 0; v < n_; ++v) {
            if (!informed.test(v)) continue;
            for (auto w : nbr_[v])
                if (!informed.test(w)) {
                    senders.push_back(v);
                    break;
                }
        }
        auto options = [&](std::uint32_t v) {
            std::uint32_t c = 0;
            for (auto w : nbr_[v]) c += !informed.test(w);
            return c;
        };
        std::stable_sort(senders.begin(), senders.end(),
                         [&](std::uint32_t x, std::uint32_t y) { return options(x) < options(y); });

        Bits next = informed;
        std::vector<std::uint32_t> idle;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> picks;
        const bool found = choose(informed, t, senders, 0, next, remaining, idle, picks);
        if (!found) failed_[left].insert(key);
        return found;
    }

    // Assigns a target (or none) to senders[idx..]; a sender stays idle only if
    // all its uninformed neighbours end up taken.
    bool choose(const Bits& informed, std::uint32_t t, const std::vector<std::uint32_t>& senders, std::size_t idx,
                Bits& next, std::vector<std::uint32_t>& remaining, std::vector<std::uint32_t>& idle,
                std::vector<std::pair<std::uint32_t, std::uint32_t>>& picks) {
        const std::uint32_t left = steps_ - t;
        if (idx > 0 && !relaxation_holds(next, remaining)) return false;
        if (idx == senders.size()) {
            for (auto v : idle)
                for (auto w : nbr_[v])
                    if (!next.test(w)) return false;
            trail_.push_back(picks);
            if (dfs(next, t + 1)) return true;
            trail_.pop_back();
            return false;
        }
        const auto v = senders[idx];
        std::array<std::uint32_t, 6> targets{};
        std::size_t count = 0;
        for (auto w : nbr_[v])
            if (!next.test(w) && std::find(targets.begin(), targets.begin() + count, w) == targets.begin() + count)
                targets[count++] = w;
        std::sort(targets.begin(), targets.begin() + count,
                  [&](std::uint32_t x, std::uint32_t y) { return dist0_[x] > dist0_[y]; });
        remaining[v] = left - 1;
        for (std::size_t k = 0; k < count; ++k) {
            const auto w = targets[k];
            next.set(w);
            remaining[w] = left - 1;
            picks.emplace_back(v, w);
            const bool ok = choose(informed, t, senders, idx + 1, next, remaining, idle, picks);
            picks.pop_back();
            next.w[w >> 6] &= ~(std::uint64_t{1} << (w & 63));
            remaining[w] = 0;
            if (ok) return true;
        }
        idle.push_back(v);
        const bool ok = choose(informed, t, senders, idx + 1, next, remaining, idle, picks);
        idle.pop_back();
        remaining[v] = left;
        return ok;
    }

    std::uint32_t n_;
    std::uint32_t steps_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<std::uint32_t> dist0_;
    std::vector<std::array<std::uint32_t, 6>> nbr_;
    std::vector<std::uint32_t> powers_;
    std::vector<std::vector<std::uint64_t>> binom_;
    std::vector<std::unordered_set<Bits, BitsHash>> failed_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> trail_;
};

bool schedule_is_valid(const FrobeniusCirculant& g, const BroadcastSchedule& s) {
    const auto n = g.order();
    if (s.assignments.size() != n - 1) return false;
    std::vector<std::uint32_t> time(n, std::numeric_limits<std::uint32_t>::max());
    time[s.source] = 0;
    for (const auto& as : s.assignments) {
        if (as.vertex >= n || time[as.vertex] != std::numeric_limits<std::uint32_t>::max()) return false;
        time[as.vertex] = as.time;
    }
    std::unordered_set<std::uint64_t> sends;
    for (const auto& as : s.assignments) {
        if (!g.as_circulant().is_adjacent(as.sender, as.vertex)) return false;
        if (time[as.sender] >= as.time) return false;
        if (!sends.insert(as.sender * 4096 + as.time).second) return false;
    }
    return true;
}

}  // namespace

BroadcastSearchResult broadcast_search(const FrobeniusCirculant& g, std::uint32_t steps, std::uint64_t node_budget) {
    require(g.order() <= kSearchLimit, "broadcast_search: order exceeds " + std::to_string(kSearchLimit));
    BroadcastSearch search(g, steps, node_budget);
    BroadcastSearchResult out;
    try {
        out.feasible = search.run();
    } catch (const BudgetExceeded&) {
        out.feasible.reset();
    }
    out.nodes = search.nodes();
    if (out.feasible.value_or(false)) {
        BroadcastSchedule w;
        w.n = g.order();
        for (std::size_t s = 0; s < search.trail().size(); ++s)
            for (const auto& [from, to] : search.trail()[s])
                w.assignments.push_back({to, static_cast<std::uint32_t>(s + 1), from});
        std::sort(w.assignments.begin(), w.assignments.end(), [](const auto& x, const auto& y) {
            return x.time != y.time ? x.time < y.time : x.vertex < y.vertex;
        });
        for (const auto& as : w.assignments) w.horizon = std::max(w.horizon, as.time);
        ensure(schedule_is_valid(g, w), "broadcast_search: witness is not a valid broadcast");
        out.witness = std::move(w);
    }
    return out;
}

BroadcastCertificate broadcast_time(const FrobeniusCirculant& g, const DistanceDiagram& d,
                                    const BroadcastSearchOptions& options) {
    BroadcastCertificate cert;
    cert.diameter = d.diameter();
    const auto scheme = broadcast_schedule(g, d);
    ensure(schedule_is_valid(g, scheme), "broadcast_time: scheme L is not a valid broadcast");
    cert.horizon = scheme.horizon;
    const auto n = g.order();
    if (n > options.exhaustive_bound || n > kSearchLimit) return cert;

    std::uint32_t log2n = 0;
    while ((std::uint64_t{1} << log2n) < n) ++log2n;
    std::uint64_t budget = options.node_budget;
    for (std::uint32_t steps = std::max(cert.diameter, log2n); steps < cert.horizon; ++steps) {
        auto result = broadcast_search(g, steps, budget);
        cert.nodes += result.nodes;
        if (!result.feasible) return cert;
        budget -= std::min(budget, result.nodes);
        if (*result.feasible) {
            cert.exact = steps;
            cert.certified = true;
            cert.witness = std::move(result.witness);
            return cert;
        }
    }
    cert.exact = cert.horizon;
    cert.certified = true;
    return cert;
}

Metrics compute_metrics(const FrobeniusCirculant& g, const BroadcastSearchOptions& options) {
    Metrics m;
    m.n = g.order();
    m.a = g.generator();
    m.canonical_generator = canonical_generator(m.n, m.a);
    m.cd = circulant_to_ej(g).canonical;
    const auto from_cd = type_vector_from_cd(m.cd, m.n);
    if (m.n <= kMaxDiagramOrder) {
        const auto d = build_diagram(g);
        m.type_vector = type_vector(d);
        m.pi = forwarding_index(d);
        ensure(m.pi == forwarding_index_from_type(m.type_vector), "compute_metrics: forwarding index mismatch");
        ensure(m.type_vector == from_cd, "compute_metrics: type vector differs from the (c, d) formula");
        m.diameter = d.diameter();
        m.broadcast = broadcast_time(g, d, options);
    } else {
        m.type_vector = from_cd;
        m.pi = forwarding_index_from_type(m.type_vector);
        m.diameter = static_cast<std::uint32_t>(m.type_vector.size());
    }
    m.arc_pi = m.pi / 2;
    m.pi_closed_form = forwarding_index_closed_form(m.cd, m.n);
    m.wiener = wiener_index(m.n, m.pi);
    m.gossip_time = gossip_time(g);
    return m;
}

}  // namespace frobcirc
