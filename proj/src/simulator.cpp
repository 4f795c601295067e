// SPDX-License-Identifier: Apache-2.0
#include "frobcirc/simulator.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "frobcirc/error.hpp"

namespace frobcirc {

namespace {

class BitMatrix {
public:
    BitMatrix(std::size_t rows, std::size_t cols) : words_((cols + 63) / 64), bits_(rows * words_, 0) {}

    bool test(std::size_t r, std::size_t c) const { return (bits_[r * words_ + (c >> 6)] >> (c & 63)) & 1; }
    void set(std::size_t r, std::size_t c) { bits_[r * words_ + (c >> 6)] |= std::uint64_t{1} << (c & 63); }
    const std::uint64_t* row(std::size_t r) const { return bits_.data() + r * words_; }
    std::size_t words() const { return words_; }

private:
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

std::string arc_text(const Transmission& t) {
    return "(" + std::to_string(t.tail) + ", " + std::to_string(t.head) + ") carrying " + std::to_string(t.origin);
}

GossipReport fail(GossipReport r, std::size_t step, std::string msg) {
    r.valid = false;
    r.failed_step = step;
    r.diagnostic = "step " + std::to_string(step) + ": " + std::move(msg);
    return r;
}

GossipReport run_full(const FrobeniusCirculant& g, const GossipSchedule& s) {
    const auto n = g.order();
    const auto& c = g.as_circulant();
    const auto dist = bfs_distances(g, 0);
    GossipReport r;
    r.full_state = true;
    r.every_arc_once = true;
    r.origin_matching = true;
    r.shortest_paths = true;

    BitMatrix known(n, n);
    for (Residue v = 0; v < n; ++v) known.set(v, v);
    std::uint64_t total = n;
    const std::uint64_t goal = n * n;
    if (total == goal) r.completion_step = 0;

    std::vector<std::uint32_t> arc_stamp(6 * n, 0);
    std::vector<std::pair<Residue, Residue>> deliveries;
    std::vector<std::uint32_t> bucket_start(n + 1), by_origin;
    for (std::size_t step = 1; step <= s.steps.size(); ++step) {
        const auto stamp = static_cast<std::uint32_t>(step);
        const auto list = s.expanded(step - 1);
        deliveries.clear();
        by_origin.resize(list.size());
        std::uint64_t used = 0;
        for (const auto& t : list) {
            if (t.tail >= n || t.head >= n || t.origin >= n)
                return fail(r, step, "vertex out of range in " + arc_text(t));
            const int label = c.arc_label(t.tail, t.head);
            if (label < 0) return fail(r, step, arc_text(t) + " is not an arc");
            auto& mark = arc_stamp[6 * t.tail + static_cast<std::size_t>(label)];
            if (mark == stamp) return fail(r, step, "arc " + arc_text(t) + " used twice");
            mark = stamp;
            ++used;
            if (!known.test(t.tail, t.origin))
                return fail(r, step, "tail does not hold the message in " + arc_text(t));
            const auto dt = dist[sub_mod(t.tail, t.origin, n)], dh = dist[sub_mod(t.head, t.origin, n)];
            if (dh != dt + 1) r.shortest_paths = false;
            deliveries.emplace_back(t.head, t.origin);
        }
        if (used != 6 * n) r.every_arc_once = false;
        if (step >= 2 && r.origin_matching) {
            // per origin: distinct tails and heads, and no vertex both sends and receives
            std::fill(bucket_start.begin(), bucket_start.end(), 0);
            for (const auto& t : list) ++bucket_start[t.origin + 1];
            for (std::size_t o = 0; o < n; ++o) bucket_start[o + 1] += bucket_start[o];
            std::vector<std::uint32_t> fill(bucket_start.begin(), bucket_start.end() - 1);
            for (std::size_t i = 0; i < list.size(); ++i) by_origin[fill[list[i].origin]++] = static_cast<std::uint32_t>(i);
            std::vector<Residue> ends;
            for (std::size_t o = 0; o < n && r.origin_matching; ++o) {
                ends.clear();
                for (auto i = bucket_start[o]; i < bucket_start[o + 1]; ++i) {
                    ends.push_back(list[by_origin[i]].tail);
                    ends.push_back(list[by_origin[i]].head);
                }
                std::sort(ends.begin(), ends.end());
                if (std::adjacent_find(ends.begin(), ends.end()) != ends.end()) r.origin_matching = false;
            }
        }
        for (const auto& [v, o] : deliveries) {
            if (!known.test(v, o)) {
                known.set(v, o);
                ++total;
            }
        }
        r.steps_executed = step;
        if (total == goal && !r.completion_step) r.completion_step = step;
    }
    if (total != goal)
        return fail(r, s.steps.size(), std::to_string(goal - total) + " (vertex, origin) pairs never delivered");
    r.valid = true;
    return r;
}

// Every transmission of step t is (tail + u, head + u, u) for some template
// entry; knowledge of origin u is the translate of knowledge of origin 0.
GossipReport run_reduced(const FrobeniusCirculant& g, const GossipSchedule& s) {
    const auto n = g.order();
    const auto& c = g.as_circulant();
    const auto dist = bfs_distances(g, 0);
    GossipReport r;
    r.full_state = false;
    r.every_arc_once = true;
    r.origin_matching = true;
    r.shortest_paths = true;

    std::vector<bool> holds(n, false);
    holds[0] = true;
    std::uint64_t holders = 1;
    for (std::size_t step = 1; step <= s.steps.size(); ++step) {
        const auto& list = s.steps[step - 1];
        std::array<bool, 6> label_used{};
        std::vector<Residue> fresh;
        std::vector<Residue> ends;
        for (const auto& t : list) {
            if (t.origin != 0) return fail(r, step, "template entry " + arc_text(t) + " does not carry origin 0");
            if (t.tail >= n || t.head >= n) return fail(r, step, "vertex out of range in " + arc_text(t));
            const int label = c.arc_label(t.tail, t.head);
            if (label < 0) return fail(r, step, arc_text(t) + " is not an arc");
            // two template entries with the same difference put two messages on one arc
            if (label_used[static_cast<std::size_t>(label)])
                return fail(r, step, "arc difference of " + arc_text(t) + " repeats, so some arc is used twice");
            label_used[static_cast<std::size_t>(label)] = true;
            if (!holds[t.tail]) return fail(r, step, "tail does not hold the message in " + arc_text(t));
            if (dist[t.head] != dist[t.tail] + 1) r.shortest_paths = false;
            fresh.push_back(t.head);
            ends.push_back(t.tail);
            ends.push_back(t.head);
        }
        if (list.size() != 6) r.every_arc_once = false;
        if (step >= 2) {
            std::sort(ends.begin(), ends.end());
            if (std::adjacent_find(ends.begin(), ends.end()) != ends.end()) r.origin_matching = false;
        }
        for (auto v : fresh)
            if (!holds[v]) {
                holds[v] = true;
                ++holders;
            }
        r.steps_executed = step;
        if (holders == n && !r.completion_step) r.completion_step = step;
    }
    if (holders != n)
        return fail(r, s.steps.size(), std::to_string(n - holders) + " vertices never receive the message of origin 0");
    r.valid = true;
    return r;
}

}  // namespace

GossipReport run_gossip(const FrobeniusCirculant& g, const GossipSchedule& s, const SimulationOptions& options) {
    require(s.n == g.order(), "run_gossip: schedule order " + std::to_string(s.n) + " differs from graph order " +
                                  std::to_string(g.order()));
    if (g.order() <= options.full_state_limit) return run_full(g, s);
    require(s.translation_invariant,
            "run_gossip: order above the full-state limit needs a translation-invariant schedule");
    return run_reduced(g, s);
}

BroadcastReport run_broadcast(const FrobeniusCirculant& g, const BroadcastSchedule& s, Residue source) {
    const auto n = g.order();
    require(s.n == n, "run_broadcast: schedule order differs from graph order");
    require(source < n, "run_broadcast: source out of range");
    BroadcastReport r;
    const auto dist = bfs_distances(g, 0);
    r.diameter = *std::max_element(dist.begin(), dist.end());
    auto fail_at = [&](std::uint32_t time, std::string msg) {
        r.valid = false;
        r.failed_time = time;
        r.diagnostic = "time " + std::to_string(time) + ": " + std::move(msg);
        return r;
    };
    if (s.source != source)
        return fail_at(0, "schedule is rooted at " + std::to_string(s.source) + ", not " + std::to_string(source));

    constexpr auto kNever = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> received(n, kNever);
    received[source] = 0;
    std::vector<BroadcastAssignment> order = s.assignments;
    std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.time < y.time; });
    std::vector<std::uint32_t> last_send(n, kNever);
    for (const auto& as : order) {
        const auto text = std::to_string(as.sender) + " -> " + std::to_string(as.vertex);
        if (as.time == 0) return fail_at(0, text + " scheduled at time 0");
        if (as.vertex >= n || as.sender >= n) return fail_at(as.time, text + " names a vertex out of range");
        if (!g.as_circulant().is_adjacent(as.sender, as.vertex)) return fail_at(as.time, text + " is not an edge");
        if (received[as.sender] >= as.time) return fail_at(as.time, text + ": sender not informed before this step");
        if (last_send[as.sender] == as.time) return fail_at(as.time, text + ": sender already sends in this step");
        if (received[as.vertex] != kNever) return fail_at(as.time, text + ": receiver already informed");
        last_send[as.sender] = as.time;
        received[as.vertex] = as.time;
        r.horizon = std::max(r.horizon, as.time);
    }
    const auto missing = static_cast<std::size_t>(std::count(received.begin(), received.end(), kNever));
    if (missing > 0) return fail_at(r.horizon, std::to_string(missing) + " vertices never informed");
    r.valid = true;
    return r;
}

std::size_t greedy_gossip_baseline(const AdjacencyGraph& g) {
    const auto n = g.size();
    require(n >= 1 && n <= kMaxBaselineOrder, "greedy_gossip_baseline: order out of range");
    for (auto d : bfs_distances(g, 0))
        require(d != kUnreachable, "greedy_gossip_baseline: graph is disconnected");
    BitMatrix known(n, n);
    for (std::size_t v = 0; v < n; ++v) known.set(v, v);
    std::uint64_t total = n;
    std::size_t steps = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> deliveries;
    while (total < std::uint64_t{n} * n) {
        ++steps;
        deliveries.clear();
        for (std::uint32_t u = 0; u < n; ++u) {
            for (auto v : g.adjacency[u]) {
                const auto* ru = known.row(u);
                const auto* rv = known.row(v);
                for (std::size_t w = 0; w < known.words(); ++w) {
                    const std::uint64_t diff = ru[w] & ~rv[w];
                    if (diff) {
                        deliveries.emplace_back(v, static_cast<std::uint32_t>(w * 64 + std::countr_zero(diff)));
                        break;
                    }
                }
            }
        }
        for (const auto& [v, o] : deliveries)
            if (!known.test(v, o)) {
                known.set(v, o);
                ++total;
            }
    }
    return steps;
}

}  // namespace frobcirc
