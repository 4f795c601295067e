// SPDX-License-Identifier: Apache-2.0
#include "frobcirc/json_io.hpp"

#include <algorithm>

#include "frobcirc/error.hpp"

namespace frobcirc::json {

namespace {

template <typename T>
T field(const json& j, const char* key) {
    require(j.is_object() && j.contains(key), std::string("json: missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        precondition_failed(std::string("json: field '") + key + "': " + e.what());
    }
}

}  // namespace

json to_json(const Classification& c) {
    json out{{"n", c.n}, {"exists", c.exists}, {"solutions", c.solutions}, {"graph_count", c.graph_count}};
    std::vector<Residue> canonical;
    for (auto a : c.solutions)
        if (canonical_generator(c.n, a) == a) canonical.push_back(a);
    out["canonical_generators"] = canonical;
    json factors = json::array();
    for (const auto& f : factorize(c.n).factors) factors.push_back({{"prime", f.prime}, {"exponent", f.exponent}});
    out["factors"] = factors;
    return out;
}

json to_json(const FrobeniusCirculant& g) {
    const auto n = g.order();
    const auto a = g.generator();
    return {{"n", n},
            {"a", a},
            {"steps", {a, sub_mod(a, 1, n), 1}},
            {"connection_set", g.connection_set()},
            {"powers", g.powers()},
            {"canonical_generator", canonical_generator(n, a)},
            {"valency", 6},
            {"edges", 3 * n}};
}

json to_json(EJInt u) { return {{"x", u.x}, {"y", u.y}}; }

json to_json(CanonicalPair cd) { return {{"c", cd.c}, {"d", cd.d}}; }

json to_json(const DiophantineWitness& w) {
    return {{"case", to_string(w.which)}, {"m", w.m}, {"r", w.r}, {"s", w.s}, {"alpha", to_json(w.alpha)}};
}

json to_json(const BroadcastCertificate& b) {
    json out{{"diameter", b.diameter}, {"horizon", b.horizon}, {"certified", b.certified}, {"search_nodes", b.nodes}};
    out["exact"] = b.exact ? json(*b.exact) : json(nullptr);
    if (b.witness) out["witness"] = to_json(*b.witness);
    return out;
}

json to_json(const Metrics& m) {
    json out{{"n", m.n},
             {"a", m.a},
             {"canonical_generator", m.canonical_generator},
             {"canonical", to_json(m.cd)},
             {"diameter", m.diameter},
             {"type_vector", m.type_vector},
             {"pi", m.pi},
             {"arc_pi", m.arc_pi},
             {"pi_closed_form", m.pi_closed_form},
             {"wiener", m.wiener},
             {"gossip_time", m.gossip_time}};
    out["broadcast"] = m.broadcast ? to_json(*m.broadcast) : json(nullptr);
    return out;
}

json to_json(const DistanceDiagram& d, const FrobeniusCirculant& g) {
    json sector = json::array();
    for (const auto& c : d.sector) sector.push_back({{"vertex", c.vertex}, {"i", c.i}, {"j", c.j}});
    json hex = json::array();
    for (const auto& c : hexagonal_coordinates(g, d))
        hex.push_back({{"vertex", c.vertex}, {"i", c.i}, {"j", c.j}, {"k", c.k}});
    return {{"n", d.n},
            {"a", d.a},
            {"r", d.r},
            {"profile", d.profile},
            {"diameter", d.diameter()},
            {"type_vector", type_vector(d)},
            {"sector", sector},
            {"hexagonal", hex}};
}

json to_json(const GossipSchedule& s, bool expand) {
    json steps = json::array();
    for (std::size_t t = 0; t < s.steps.size(); ++t) {
        json step = json::array();
        const auto list = expand ? s.expanded(t) : s.steps[t];
        for (const auto& tr : list) step.push_back({{"arc", {tr.tail, tr.head}}, {"origin", tr.origin}});
        steps.push_back(std::move(step));
    }
    return {{"n", s.n},
            {"total_steps", s.total_steps()},
            {"translation_invariant", s.translation_invariant && !expand},
            {"steps", steps}};
}

json to_json(const BroadcastSchedule& s) {
    json list = json::array();
    for (const auto& as : s.assignments)
        list.push_back({{"vertex", as.vertex}, {"time", as.time}, {"sender", as.sender}});
    return {{"n", s.n}, {"source", s.source}, {"horizon", s.horizon}, {"assignments", list}};
}

json to_json(const GossipReport& r) {
    json out{{"valid", r.valid},
             {"steps_executed", r.steps_executed},
             {"full_state", r.full_state},
             {"every_arc_once", r.every_arc_once},
             {"origin_matching", r.origin_matching},
             {"shortest_paths", r.shortest_paths}};
    out["completion_time"] = r.completion_step ? json(*r.completion_step) : json(nullptr);
    out["violations"] = r.valid ? json::array() : json::array({r.diagnostic});
    return out;
}

json to_json(const BroadcastReport& r) {
    json out{{"valid", r.valid}, {"completion_time", r.horizon}, {"diameter", r.diameter}};
    out["violations"] = r.valid ? json::array() : json::array({r.diagnostic});
    return out;
}

json to_json(const CoverMap& m) {
    return {{"total_order", m.total_order}, {"base_order", m.base_order}, {"fold", m.fold}, {"projection", m.projection}};
}

json conversion_json(const FrobeniusCirculant& g, std::size_t sample) {
    const auto ej = circulant_to_ej(g);
    const auto image = iso_map(g, ej.alpha);
    json iso = json::array();
    for (std::size_t v = 0; v < std::min<std::size_t>(sample, image.size()); ++v)
        iso.push_back({{"vertex", v}, {"image", to_json(image[v])}});
    json out{{"n", g.order()},
             {"a", g.generator()},
             {"alpha", to_json(ej.alpha)},
             {"alpha_text", to_string(ej.alpha)},
             {"canonical", to_json(ej.canonical)},
             {"norm", ej.n},
             {"iso_multiplier", iso_multiplier(g, ej.alpha)},
             {"iso_sample", iso}};
    out["witness"] = g.order() <= (std::uint64_t{1} << 30) ? to_json(find_witness(g, ej.alpha)) : json(nullptr);
    return out;
}

json ej_conversion_json(EJInt alpha, std::size_t sample) {
    const auto g = ej_to_circulant(alpha);
    json out = conversion_json(g, sample);
    out["input"] = to_json(alpha);
    out["raw_generator"] = ej_generator(alpha);
    return out;
}

json quotient_json(const FrobeniusCirculant& g, const CirculantQuotient& q) {
    const auto check = verify_cover(q.map, g.materialize(), q.base.materialize());
    return {{"total", to_json(g)},
            {"base", to_json(q.base)},
            {"map", to_json(q.map)},
            {"cover_ok", check.ok},
            {"diagnostic", check.diagnostic}};
}

json ej_cover_json(EJInt alpha, EJInt beta, const EJCover& c) {
    const auto check = verify_cover(c.map, c.constructed, EJQuotient(alpha).to_graph());
    json labels = c.constructed.labels;
    return {{"alpha", to_json(alpha)},
            {"beta", to_json(beta)},
            {"product", to_json(c.product)},
            {"order", c.constructed.size()},
            {"edges", c.constructed.edge_count()},
            {"vertex_labels", labels},
            {"matches_direct", c.matches_direct},
            {"map", to_json(c.map)},
            {"cover_ok", check.ok},
            {"diagnostic", check.diagnostic}};
}

EJInt ej_from_json(const json& j) { return {field<std::int64_t>(j, "x"), field<std::int64_t>(j, "y")}; }

CoverMap cover_map_from_json(const json& j) {
    return {field<std::uint64_t>(j, "total_order"), field<std::uint64_t>(j, "base_order"),
            field<std::uint64_t>(j, "fold"), field<std::vector<std::uint32_t>>(j, "projection")};
}

GossipSchedule gossip_from_json(const json& j) {
    GossipSchedule s;
    s.n = field<std::uint64_t>(j, "n");
    s.translation_invariant = field<bool>(j, "translation_invariant");
    const auto steps = field<json>(j, "steps");
    require(steps.is_array(), "json: 'steps' must be an array");
    for (const auto& step : steps) {
        require(step.is_array(), "json: each step must be an array");
        std::vector<Transmission> list;
        for (const auto& tr : step) {
            const auto arc = field<std::vector<Residue>>(tr, "arc");
            require(arc.size() == 2, "json: 'arc' must be [tail, head]");
            list.push_back({arc[0], arc[1], field<Residue>(tr, "origin")});
        }
        s.steps.push_back(std::move(list));
    }
    return s;
}

BroadcastSchedule broadcast_from_json(const json& j) {
    BroadcastSchedule s;
    s.n = field<std::uint64_t>(j, "n");
    s.source = field<Residue>(j, "source");
    s.horizon = field<std::uint32_t>(j, "horizon");
    const auto list = field<json>(j, "assignments");
    require(list.is_array(), "json: 'assignments' must be an array");
    for (const auto& as : list)
        s.assignments.push_back({field<Residue>(as, "vertex"), field<std::uint32_t>(as, "time"), field<Residue>(as, "sender")});
    return s;
}

}  // namespace frobcirc::json
