// SPDX-License-Identifier: Apache-2.0
#include "frobcirc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <thread>

#include "frobcirc/circulant.hpp"
#include "frobcirc/covers.hpp"
#include "frobcirc/eisenstein.hpp"
#include "frobcirc/error.hpp"
#include "frobcirc/scheduler.hpp"
#include "frobcirc/simulator.hpp"

namespace frobcirc {

namespace {

void check(GraphCheck& out, bool ok, const std::string& what) {
    if (!ok) out.failures.push_back(what);
}

}  // namespace

unsigned default_thread_count() {
    if (const char* env = std::getenv("FROBCIRC_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

GraphCheck check_graph(std::uint64_t n, Residue a, const VerifyOptions& options) {
    GraphCheck out{n, a, {}};
    try {
        const FrobeniusCirculant g(n, a);
        const auto cls = classify(n);
        check(out, cls.exists, "classify reports no graph");
        check(out, std::binary_search(cls.solutions.begin(), cls.solutions.end(), a), "a missing from the solutions");
        const auto l = factorize(n).distinct_primes();
        check(out, cls.solutions.size() == (std::size_t{1} << l), "solution count is not 2^l");
        check(out, cls.graph_count == (std::uint64_t{1} << (l - 1)), "graph count is not 2^(l-1)");

        const auto dist = bfs_distances(g, 0);
        const std::uint32_t ecc = *std::max_element(dist.begin(), dist.end());
        std::vector<std::uint64_t> sphere(ecc + 1, 0);
        for (auto d : dist) ++sphere[d];
        const std::uint64_t dist_sum = std::accumulate(dist.begin(), dist.end(), std::uint64_t{0});

        const auto d = build_diagram(g);
        check(out, d.diameter() == ecc, "diagram diameter differs from BFS eccentricity");
        std::vector<int> owner(n, -1);
        bool partition = true;
        for (std::size_t k = 0; k < 6; ++k)
            for (const auto& c : d.sector) {
                const auto v = mul_mod(c.vertex, g.powers()[k], n);
                if (v == 0 || owner[v] >= 0) partition = false;
                else owner[v] = static_cast<int>(k);
                if (dist[v] != c.distance()) partition = false;
            }
        check(out, partition && std::count(owner.begin(), owner.end(), -1) == 1,
              "sector rotations do not partition Z_n \\ {0} at the cell distances");

        const auto tv = type_vector(d);
        bool spheres = tv.size() == ecc;
        for (std::size_t t = 0; spheres && t < tv.size(); ++t) spheres = 6 * tv[t] == sphere[t + 1];
        check(out, spheres, "type vector differs from BFS sphere sizes / 6");
        const auto pi = forwarding_index(d);
        check(out, pi == forwarding_index_from_type(tv), "eq (15) differs from 2·sum t·n_t");
        check(out, 3 * pi == dist_sum, "forwarding index differs from BFS distance sum / |E|");
        check(out, wiener_index(n, pi) * 2 == n * dist_sum, "Wiener index differs from BFS");

        const auto ej = circulant_to_ej(g);
        check(out, ej.n == n, "N(alpha) != n");
        check(out, std::gcd(ej.canonical.c, ej.canonical.d) == 1, "gcd(c, d) != 1");
        check(out, ej_to_circulant(ej.alpha).generator() == canonical_generator(n, a), "EJ round trip changes the class");
        check(out, type_vector_from_cd(ej.canonical, n) == tv, "type vector differs from the (c, d) formula");
        const auto dd = distance_distribution(ej.alpha);
        check(out, dd.size() == sphere.size() && std::equal(dd.begin(), dd.end(), sphere.begin()),
              "distance distribution closed form differs from BFS");
        if (n <= options.iso_limit) check(out, is_isomorphism(g, ej.alpha, iso_map(g, ej.alpha)), "iso_map is not an isomorphism");
        const auto w = find_witness(g, ej.alpha);
        check(out, witness_lhs(g, w) == 1, "witness does not satisfy its equation");

        const auto tree = build_spanning_tree(g, d);
        check(out, is_shortest_path_tree(g, tree), "spanning tree is not a shortest-path tree");
        const auto loads = routing_loads(g, tree);
        check(out, loads.arc_uniform && loads.edge_uniform, "routing loads are not uniform");
        check(out, loads.max_edge_load == pi && 2 * loads.max_arc_load == pi, "routing load differs from pi");
        if (n <= options.routing_limit) {
            std::vector<std::uint64_t> arc(6, 0);
            const auto& c = g.as_circulant();
            for (Residue v = 1; v < n; ++v) {
                const auto path = route(tree, 0, v);
                for (std::size_t i = 0; i + 1 < path.size(); ++i) ++arc[static_cast<std::size_t>(c.arc_label(path[i], path[i + 1]))];
            }
            // translating the paths from 0 spreads each count over the n arcs of one difference
            check(out, std::all_of(arc.begin(), arc.end(), [&](std::uint64_t x) { return 2 * x == pi; }),
                  "explicit path walk gives non-uniform loads");
        }

        const auto gossip = gossip_schedule(g, tree);
        const auto report = run_gossip(g, gossip, {options.full_state_limit});
        check(out, report.valid, "gossip schedule invalid: " + report.diagnostic);
        check(out, report.completion_step && *report.completion_step == (n - 1) / 6, "gossip does not finish at (n - 1) / 6");
        check(out, report.every_arc_once && report.origin_matching && report.shortest_paths,
              "gossip schedule misses an arc-usage, matching or shortest-path property");

        const auto scheme = broadcast_schedule(g, d);
        const auto b = run_broadcast(g, scheme, 0);
        check(out, b.valid, "broadcast scheme invalid: " + b.diagnostic);
        check(out, b.horizon == d.diameter() + 2 || b.horizon == d.diameter() + 3, "broadcast horizon not in {D+2, D+3}");
        if (n <= options.exhaustive_bound) {
            const auto cert = broadcast_time(g, d, {options.exhaustive_bound});
            check(out, cert.certified && cert.exact && (*cert.exact == ecc + 2 || *cert.exact == ecc + 3),
                  "exact broadcast time not in {D+2, D+3}");
        }

        if (n <= options.quotient_limit && n <= kMaxMaterializedOrder) {
            const auto total = g.materialize();
            for (std::uint64_t m = 7; m < n; ++m) {
                if (n % m != 0 || !classify(m).exists) continue;
                const auto q = quotient_circulant(g, m);
                const auto c = verify_cover(q.map, total, q.base.materialize());
                check(out, c.ok, "quotient by " + std::to_string(m) + ": " + c.diagnostic);
            }
        }
    } catch (const std::exception& e) {
        out.failures.push_back(std::string("exception: ") + e.what());
    }
    return out;
}

VerifyReport verify_all(const VerifyOptions& options, const std::function<void(std::size_t, std::size_t)>& progress) {
    require(options.max_n >= 7, "verify_all: max_n must be at least 7");
    require(options.max_n <= kMaxDiagramOrder, "verify_all: max_n exceeds the diagram limit");
    VerifyReport report;
    std::vector<std::pair<std::uint64_t, Residue>> jobs;
    for (std::uint64_t n = 7; n <= options.max_n; n += 6) {
        const auto c = classify(n);
        if (!c.exists) continue;
        ++report.orders;
        for (auto a : c.solutions)
            if (canonical_generator(n, a) == a) jobs.emplace_back(n, a);
    }
    report.graphs = jobs.size();

    // largest orders first so the tail of the run stays balanced
    std::vector<std::size_t> order(jobs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::reverse(order.begin(), order.end());

    std::vector<GraphCheck> results(jobs.size());
    std::atomic<std::size_t> next{0}, done{0};
    std::mutex mutex;
    std::condition_variable cv;
    const unsigned workers =
        std::min<unsigned>(options.threads ? options.threads : default_thread_count(), std::max<std::size_t>(1, jobs.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < order.size();) {
                const auto [n, a] = jobs[order[i]];
                results[order[i]] = check_graph(n, a, options);
                done.fetch_add(1);
                cv.notify_one();
            }
        });
    }
    if (progress) {
        std::unique_lock lock(mutex);
        while (done.load() < jobs.size()) {
            cv.wait_for(lock, std::chrono::milliseconds(500));
            progress(done.load(), jobs.size());
        }
    }
    for (auto& th : pool) th.join();
    for (auto& r : results)
        if (!r.failures.empty()) report.failures.push_back(std::move(r));
    return report;
}

}  // namespace frobcirc
