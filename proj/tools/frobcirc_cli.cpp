// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "frobcirc/frobcirc.h"

namespace {

using nlohmann::json;

constexpr int kExitPrecondition = 1;
constexpr int kExitInternal = 2;

struct Failure {
    int code;
    std::string message;
};

struct GraphDeleter {
    void operator()(fc_graph* g) const { fc_graph_free(g); }
};
using GraphPtr = std::unique_ptr<fc_graph, GraphDeleter>;

void check(fc_status st) {
    if (st == FC_OK) return;
    throw Failure{st == FC_ERR_PRECONDITION ? kExitPrecondition : kExitInternal, fc_last_error()};
}

std::string take(char* s) {
    std::string out(s ? s : "");
    fc_string_free(s);
    return out;
}

template <typename F>
std::string call(F&& f) {
    char* out = nullptr;
    check(f(&out));
    return take(out);
}

GraphPtr open_graph(std::uint64_t n, std::uint64_t a) {
    fc_graph* g = nullptr;
    check(fc_graph_new(n, a, &g));
    return GraphPtr(g);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Failure{kExitPrecondition, "cannot read " + path};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    return v.dump();
}

bool all_scalars(const json& v) {
    for (const auto& x : v)
        if (x.is_structured()) return false;
    return true;
}

void print_table(std::ostream& os, const json& rows, const std::string& indent) {
    std::vector<std::string> cols;
    for (const auto& [k, _] : rows.front().items()) cols.push_back(k);
    std::vector<std::size_t> width(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) width[c] = cols[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < cols.size(); ++c)
            width[c] = std::max(width[c], r.contains(cols[c]) ? scalar_text(r[cols[c]]).size() : 1);
    auto line = [&](auto&& cell) {
        os << indent;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const std::string s = cell(c);
            os << s << std::string(width[c] - s.size() + 2, ' ');
        }
        os << '\n';
    };
    line([&](std::size_t c) { return cols[c]; });
    for (const auto& r : rows) line([&](std::size_t c) { return r.contains(cols[c]) ? scalar_text(r[cols[c]]) : "-"; });
}

void print_human(std::ostream& os, const json& doc, const std::string& indent = "") {
    if (!doc.is_object()) {
        os << indent << doc.dump() << '\n';
        return;
    }
    for (const auto& [key, v] : doc.items()) {
        if (!v.is_structured()) {
            os << indent << key << ": " << scalar_text(v) << '\n';
        } else if (v.is_array() && all_scalars(v)) {
            os << indent << key << ":";
            for (const auto& x : v) os << ' ' << scalar_text(x);
            os << '\n';
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            bool flat = true;
            for (const auto& r : v)
                for (const auto& [_, cell] : r.items()) flat = flat && (!cell.is_structured() || (cell.is_array() && all_scalars(cell)));
            os << indent << key << " (" << v.size() << ")\n";
            if (flat) print_table(os, v, indent + "  ");
            else
                for (const auto& r : v) print_human(os, r, indent + "  ");
        } else if (v.is_array()) {
            os << indent << key << " (" << v.size() << ")\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                os << indent << "  [" << i + 1 << "]\n";
                if (v[i].is_array() && !v[i].empty() && v[i].front().is_object()) print_table(os, v[i], indent + "    ");
                else print_human(os, v[i], indent + "    ");
            }
        } else {
            os << indent << key << ":\n";
            print_human(os, v, indent + "  ");
        }
    }
}

struct Output {
    bool human = false;
    bool pretty = false;

    void emit(const std::string& text) const {
        const auto doc = json::parse(text);
        if (human) print_human(std::cout, doc);
        else std::cout << (pretty ? doc.dump(2) : doc.dump()) << '\n';
    }
};

void progress(size_t done, size_t total, void*) {
    std::fprintf(stderr, "\rverify: %zu/%zu graphs", done, total);
    if (done == total) std::fprintf(stderr, "\n");
}

fc_format parse_format(const std::string& s) { return s == "dot" ? FC_FORMAT_DOT : FC_FORMAT_EDGES; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius circulant and Eisenstein-Jacobi graph toolkit"};
    app.require_subcommand(1);
    Output out;
    app.add_flag("--human", out.human, "Print tables instead of JSON");
    app.add_flag("--pretty", out.pretty, "Indent JSON output");

    std::uint64_t n = 0, a = FC_AUTO_GENERATOR, m = 0, source = 0, full_limit = 20000, bound = 200,
                  budget = 20'000'000, max_n = 5000, sample = 12;
    std::int64_t c = 0, d = 0, c2 = 0, d2 = 0;
    std::string kind, format = "dot", schedule_file;
    bool compact = false;
    unsigned threads = 0;
    std::uint64_t verify_full_limit = 1500, verify_bound = 0;

    auto* classify = app.add_subcommand("classify", "Existence, solutions and isomorphism classes for order n");
    classify->add_option("n", n, "Order")->required();

    auto* build = app.add_subcommand("build", "Graph summary and connection set");
    build->add_option("n", n, "Order")->required();
    build->add_option("a", a, "Generator (default: smallest canonical solution)");

    auto* convert = app.add_subcommand("convert", "Circulant to Eisenstein-Jacobi graph");
    convert->add_option("n", n)->required();
    convert->add_option("a", a)->required();
    convert->add_option("--sample", sample, "Isomorphism entries to print");

    auto* convert_ej = app.add_subcommand("convert-ej", "Eisenstein-Jacobi graph c + dρ to circulant");
    convert_ej->add_option("c", c)->required();
    convert_ej->add_option("d", d)->required();
    convert_ej->add_option("--sample", sample, "Isomorphism entries to print");

    auto* metrics = app.add_subcommand("metrics", "Diameter, type vector, forwarding and Wiener index, gossip and broadcast time");
    metrics->add_option("n", n)->required();
    metrics->add_option("a", a)->required();
    metrics->add_option("--exhaustive-bound", bound, "Largest order for the exact broadcast search");
    metrics->add_option("--node-budget", budget, "Search node budget");

    auto* diagram = app.add_subcommand("diagram", "Minimum distance diagram with hexagonal coordinates");
    diagram->add_option("n", n)->required();
    diagram->add_option("a", a)->required();

    auto* schedule = app.add_subcommand("schedule", "Gossip or broadcast schedule");
    schedule->add_option("kind", kind)->required()->check(CLI::IsMember({"gossip", "broadcast"}));
    schedule->add_option("n", n)->required();
    schedule->add_option("a", a)->required();
    schedule->add_flag("--compact", compact, "Gossip: origin-0 template steps only");
    schedule->add_option("--source", source, "Broadcast source vertex");

    auto* simulate = app.add_subcommand("simulate", "Validate a schedule in the network simulator");
    simulate->add_option("kind", kind)->required()->check(CLI::IsMember({"gossip", "broadcast"}));
    simulate->add_option("n", n)->required();
    simulate->add_option("a", a)->required();
    simulate->add_option("--schedule", schedule_file, "Schedule JSON to validate instead of the generated one");
    simulate->add_option("--full-state-limit", full_limit, "Largest order simulated with full knowledge sets");
    simulate->add_option("--source", source, "Broadcast source vertex");

    auto* quotient = app.add_subcommand("quotient", "Quotient circulant of order m and the cover map");
    quotient->add_option("n", n)->required();
    quotient->add_option("a", a)->required();
    quotient->add_option("m", m)->required();

    auto* ej_cover = app.add_subcommand("ej-cover", "Expand EJ_α to EJ_αβ and verify the cover");
    ej_cover->add_option("c", c)->required();
    ej_cover->add_option("d", d)->required();
    ej_cover->add_option("c2", c2)->required();
    ej_cover->add_option("d2", d2)->required();

    auto* reduce = app.add_subcommand("reduce", "EJ_α as a cover of a Frobenius circulant");
    reduce->add_option("c", c)->required();
    reduce->add_option("d", d)->required();

    auto* exporter = app.add_subcommand("export", "DOT or edge-list export of TL_n(a, a-1, 1)");
    exporter->add_option("n", n)->required();
    exporter->add_option("a", a)->required();
    exporter->add_option("--format", format)->check(CLI::IsMember({"dot", "edges"}));

    auto* exporter_ej = app.add_subcommand("export-ej", "DOT or edge-list export of EJ_{c+dρ}");
    exporter_ej->add_option("c", c)->required();
    exporter_ej->add_option("d", d)->required();
    exporter_ej->add_option("--format", format)->check(CLI::IsMember({"dot", "edges"}));

    auto* verify = app.add_subcommand("verify", "Run the invariant suite for every constructible order up to --max");
    verify->add_option("--max", max_n, "Largest order")->required();
    verify->add_option("--threads", threads, "Worker threads (default: FROBCIRC_THREADS or all cores)");
    verify->add_option("--full-state-limit", verify_full_limit, "Largest order simulated with full knowledge sets");
    verify->add_option("--exhaustive-bound", verify_bound, "Largest order for the exact broadcast search (0: off)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitPrecondition;
    }

    try {
        if (*classify) {
            out.emit(call([&](char** o) { return fc_classify_json(n, o); }));
        } else if (*build) {
            const auto g = open_graph(n, a);
            out.emit(call([&](char** o) { return fc_graph_json(g.get(), o); }));
        } else if (*convert) {
            const auto g = open_graph(n, a);
            out.emit(call([&](char** o) { return fc_convert_json(g.get(), sample, o); }));
        } else if (*convert_ej) {
            out.emit(call([&](char** o) { return fc_convert_ej_json(c, d, sample, o); }));
        } else if (*metrics) {
            const auto g = open_graph(n, a);
            out.emit(call([&](char** o) { return fc_metrics_json(g.get(), bound, budget, o); }));
        } else if (*diagram) {
            const auto g = open_graph(n, a);
            out.emit(call([&](char** o) { return fc_diagram_json(g.get(), o); }));
        } else if (*schedule) {
            const auto g = open_graph(n, a);
            if (kind == "gossip")
                out.emit(call([&](char** o) { return fc_gossip_schedule_json(g.get(), compact ? 0 : 1, o); }));
            else
                out.emit(call([&](char** o) { return fc_broadcast_schedule_json(g.get(), source, o); }));
        } else if (*simulate) {
            const auto g = open_graph(n, a);
            const std::string text = schedule_file.empty() ? std::string() : read_file(schedule_file);
            const char* sched = schedule_file.empty() ? nullptr : text.c_str();
            const auto report = call([&](char** o) {
                return kind == "gossip" ? fc_simulate_gossip_json(g.get(), full_limit, sched, o)
                                        : fc_simulate_broadcast_json(g.get(), source, sched, o);
            });
            out.emit(report);
            if (!json::parse(report).at("valid").get<bool>()) return sched ? kExitPrecondition : kExitInternal;
        } else if (*quotient) {
            const auto g = open_graph(n, a);
            out.emit(call([&](char** o) { return fc_quotient_json(g.get(), m, o); }));
        } else if (*ej_cover) {
            out.emit(call([&](char** o) { return fc_ej_cover_json(c, d, c2, d2, o); }));
        } else if (*reduce) {
            out.emit(call([&](char** o) { return fc_reduction_json(c, d, o); }));
        } else if (*exporter) {
            const auto g = open_graph(n, a);
            std::cout << call([&](char** o) { return fc_export(g.get(), parse_format(format), o); });
        } else if (*exporter_ej) {
            std::cout << call([&](char** o) { return fc_export_ej(c, d, parse_format(format), o); });
        } else if (*verify) {
            const auto report = call([&](char** o) {
                return fc_verify_json(max_n, threads, verify_full_limit, verify_bound, progress, nullptr, o);
            });
            out.emit(report);
            if (!json::parse(report).at("ok").get<bool>()) return kExitInternal;
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return 0;
}
