// SPDX-License-Identifier: Apache-2.0
#include "frobcirc/frobcirc.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <new>
#include <string>

#include "frobcirc/covers.hpp"
#include "frobcirc/error.hpp"
#include "frobcirc/json_io.hpp"
#include "frobcirc/verify.hpp"

struct fc_graph {
    frobcirc::FrobeniusCirculant g;
};

namespace {

using frobcirc::json::json;

thread_local std::string last_error;

template <typename F>
fc_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return FC_OK;
    } catch (const frobcirc::PreconditionError& e) {
        last_error = e.what();
        return FC_ERR_PRECONDITION;
    } catch (const nlohmann::json::exception& e) {
        last_error = std::string("invalid JSON: ") + e.what();
        return FC_ERR_PRECONDITION;
    } catch (const frobcirc::InvariantViolation& e) {
        last_error = std::string("internal invariant violated: ") + e.what();
        return FC_ERR_INTERNAL;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return FC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = std::string("internal error: ") + e.what();
        return FC_ERR_INTERNAL;
    }
}

fc_status null_argument(const char* name) {
    last_error = std::string(name) + " must not be NULL";
    return FC_ERR_NULL;
}

char* copy_out(const std::string& s) {
    auto* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

fc_status emit(char** out, const std::function<std::string()>& make) {
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] { *out = copy_out(make()); });
}

fc_status emit_json(char** out, const std::function<json()>& make) {
    return emit(out, [&] { return make().dump(); });
}

std::string export_graph(const frobcirc::AdjacencyGraph& g, fc_format format, const std::string& name) {
    switch (format) {
    case FC_FORMAT_DOT: return frobcirc::to_dot(g, name);
    case FC_FORMAT_EDGES: return frobcirc::to_edge_list(g);
    }
    frobcirc::precondition_failed("unknown export format");
}

}  // namespace

extern "C" {

const char* fc_version(void) { return "1.0.0"; }

const char* fc_last_error(void) { return last_error.c_str(); }

void fc_string_free(char* s) { std::free(s); }

fc_status fc_graph_new(uint64_t n, uint64_t a, fc_graph** out) {
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        if (a == FC_AUTO_GENERATOR) {
            const auto c = frobcirc::classify(n);
            frobcirc::require(c.exists, "no 6-valent first-kind Frobenius circulant of order " + std::to_string(n));
            a = c.solutions.front();
            for (auto s : c.solutions)
                if (frobcirc::canonical_generator(n, s) == s) {
                    a = s;
                    break;
                }
        }
        *out = new fc_graph{frobcirc::FrobeniusCirculant(n, a)};
    });
}

void fc_graph_free(fc_graph* g) { delete g; }

uint64_t fc_graph_order(const fc_graph* g) { return g ? g->g.order() : 0; }

uint64_t fc_graph_generator(const fc_graph* g) { return g ? g->g.generator() : 0; }

fc_status fc_graph_neighbors(const fc_graph* g, uint64_t v, uint64_t out[6]) {
    if (!g) return null_argument("g");
    if (!out) return null_argument("out");
    return guarded([&] {
        frobcirc::require(v < g->g.order(), "vertex out of range");
        const auto nb = g->g.neighbors(v);
        for (int k = 0; k < 6; ++k) out[k] = nb[static_cast<std::size_t>(k)];
    });
}

fc_status fc_graph_distance(const fc_graph* g, uint64_t u, uint64_t v, uint32_t* out) {
    if (!g) return null_argument("g");
    if (!out) return null_argument("out");
    return guarded([&] {
        const auto n = g->g.order();
        frobcirc::require(u < n && v < n, "vertex out of range");
        *out = frobcirc::distance_closed_form(g->g, frobcirc::sub_mod(v, u, n));
    });
}

fc_status fc_classify_json(uint64_t n, char** out) {
    return emit_json(out, [&] { return frobcirc::json::to_json(frobcirc::classify(n)); });
}

fc_status fc_graph_json(const fc_graph* g, char** out) {
    if (!g) return null_argument("g");
    return emit_json(out, [&] { return frobcirc::json::to_json(g->g); });
}

fc_status fc_convert_json(const fc_graph* g, size_t sample, char** out) {
    if (!g) return null_argument("g");
    return emit_json(out, [&] { return frobcirc::json::conversion_json(g->g, sample); });
}

fc_status fc_convert_ej_json(int64_t c, int64_t d, size_t sample, char** out) {
    return emit_json(out, [&] { return frobcirc::json::ej_conversion_json({c, d}, sample); });
}

fc_status fc_metrics_json(const fc_graph* g, uint64_t exhaustive_bound, uint64_t node_budget, char** out) {
    if (!g) return null_argument("g");
    return emit_json(out, [&] {
        return frobcirc::json::to_json(frobcirc::compute_metrics(g->g, {exhaustive_bound, node_budget}));
    });
}

fc_status fc_diagram_json(const fc_graph* g, char** out) {
    if (!g) return null_argument("g");
    return emit_json(out, [&] { return frobcirc::json::to_json(frobcirc::build_diagram(g->g), g->g); });
}

fc_status fc_gossip_schedule_json(const fc_graph* g, int expand, char** out) {
    if (!g) return null_argument("g");
    return emit_json(out, [&] {
        const auto d = frobcirc::build_diagram(g->g);
        const auto s = frobcirc::gossip_schedule(g->g, frobcirc::build_spanning_tree(g->g, d));
        return frobcirc::json::to_json(s, expand != 0);
    });
}

fc_status fc_broadcast_schedule_json(const fc_graph* g, uint64_t source, char** out) {
    if (!g) return null_argument("g");
    return emit_json(out, [&] {
        const auto s = frobcirc::broadcast_schedule(g->g, frobcirc::build_diagram(g->g));
        return frobcirc::json::to_json(frobcirc::translate(s, source));
    });
}

fc_status fc_simulate_gossip_json(const fc_graph* g, uint64_t full_state_limit, const char* schedule_json, char** out) {
    if (!g) return null_argument("g");
    return emit_json(out, [&] {
        frobcirc::GossipSchedule s;
        if (schedule_json) {
            s = frobcirc::json::gossip_from_json(json::parse(schedule_json));
        } else {
            const auto d = frobcirc::build_diagram(g->g);
            s = frobcirc::gossip_schedule(g->g, frobcirc::build_spanning_tree(g->g, d));
        }
        return frobcirc::json::to_json(frobcirc::run_gossip(g->g, s, {full_state_limit}));
    });
}

fc_status fc_simulate_broadcast_json(const fc_graph* g, uint64_t source, const char* schedule_json, char** out) {
    if (!g) return null_argument("g");
    return emit_json(out, [&] {
        frobcirc::BroadcastSchedule s;
        if (schedule_json)
            s = frobcirc::json::broadcast_from_json(json::parse(schedule_json));
        else
            s = frobcirc::translate(frobcirc::broadcast_schedule(g->g, frobcirc::build_diagram(g->g)), source);
        return frobcirc::json::to_json(frobcirc::run_broadcast(g->g, s, source));
    });
}

fc_status fc_quotient_json(const fc_graph* g, uint64_t m, char** out) {
    if (!g) return null_argument("g");
    return emit_json(out, [&] { return frobcirc::json::quotient_json(g->g, frobcirc::quotient_circulant(g->g, m)); });
}

fc_status fc_ej_cover_json(int64_t c, int64_t d, int64_t c2, int64_t d2, char** out) {
    return emit_json(out, [&] {
        const frobcirc::EJInt alpha{c, d}, beta{c2, d2};
        return frobcirc::json::ej_cover_json(alpha, beta, frobcirc::ej_cover_expand(alpha, beta));
    });
}

fc_status fc_reduction_json(int64_t c, int64_t d, char** out) {
    return emit_json(out, [&] {
        const frobcirc::EJInt alpha{c, d};
        const auto r = frobcirc::frobenius_reduction(alpha);
        const auto check = frobcirc::verify_cover(r.map, frobcirc::EJQuotient(alpha).to_graph(), r.base.materialize());
        return json{{"alpha", frobcirc::json::to_json(alpha)},
                    {"ell", r.ell},
                    {"reduced_alpha", frobcirc::json::to_json(r.reduced_alpha)},
                    {"projection_generator", r.generator},
                    {"base", frobcirc::json::to_json(r.base)},
                    {"map", frobcirc::json::to_json(r.map)},
                    {"cover_ok", check.ok},
                    {"diagnostic", check.diagnostic}};
    });
}

fc_status fc_ej_arc_transitive(int64_t c, int64_t d, int* out) {
    if (!out) return null_argument("out");
    return guarded([&] { *out = frobcirc::verify_arc_transitive({c, d}, frobcirc::kMaxMaterializedOrder) ? 1 : 0; });
}

fc_status fc_export(const fc_graph* g, fc_format format, char** out) {
    if (!g) return null_argument("g");
    return emit(out, [&] {
        return export_graph(g->g.materialize(), format,
                            "TL_" + std::to_string(g->g.order()) + "_" + std::to_string(g->g.generator()));
    });
}

fc_status fc_export_ej(int64_t c, int64_t d, fc_format format, char** out) {
    return emit(out, [&] {
        const auto ej = frobcirc::make_ej_graph({c, d});
        return export_graph(frobcirc::EJQuotient(ej.alpha).to_graph(), format,
                            "EJ_" + std::to_string(c) + "_" + std::to_string(d));
    });
}

fc_status fc_verify_json(uint64_t max_n, unsigned threads, uint64_t full_state_limit, uint64_t exhaustive_bound,
                         fc_progress_fn progress, void* user, char** out) {
    return emit_json(out, [&] {
        frobcirc::VerifyOptions o;
        o.max_n = max_n;
        o.threads = threads;
        o.full_state_limit = full_state_limit;
        o.exhaustive_bound = exhaustive_bound;
        std::function<void(std::size_t, std::size_t)> cb;
        if (progress) cb = [&](std::size_t done, std::size_t total) { progress(done, total, user); };
        const auto r = frobcirc::verify_all(o, cb);
        json failures = json::array();
        for (const auto& f : r.failures) failures.push_back({{"n", f.n}, {"a", f.a}, {"failures", f.failures}});
        return json{{"max_n", max_n}, {"orders", r.orders}, {"graphs", r.graphs}, {"ok", r.ok()}, {"failures", failures}};
    });
}

}  // extern "C"
