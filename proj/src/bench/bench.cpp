#include "rspq/bench.hpp"

#include <chrono>

#include "rspq/classify.hpp"
#include "rspq/error.hpp"

namespace rspq::bench {

using graph::Edge;
using graph::LabeledGraph;

Instance chain_instance(std::size_t n) {
    if (n < 2) throw InvalidArgument("chain needs at least two vertices");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.push_back({static_cast<int>(i), static_cast<int>(i + 1), i + 2 == n ? 'b' : 'a'});
    return {"chain-" + std::to_string(n), LabeledGraph(LabelMode::edge, n, {}, std::move(edges)), 0,
            static_cast<int>(n - 1)};
}

Instance diamond_instance(std::size_t d) {
    const int x = 0, c = 1, y = 2, first = 3;
    std::vector<Edge> edges{{x, c, 'a'}, {c, first, 'a'}, {c, y, 'b'}};
    for (std::size_t i = 0; i < d; ++i) {
        const int s = first + 3 * static_cast<int>(i);
        edges.push_back({s, s + 1, 'a'});
        edges.push_back({s, s + 2, 'a'});
        edges.push_back({s + 1, s + 3, 'a'});
        edges.push_back({s + 2, s + 3, 'a'});
    }
    const int end = first + 3 * static_cast<int>(d);
    edges.push_back({end, c, 'a'});
    return {"diamond-" + std::to_string(d),
            LabeledGraph(LabelMode::edge, static_cast<std::size_t>(end + 1), {}, std::move(edges)), x, y};
}

Instance grid_instance(std::size_t side, graph::GridLabels labels, std::uint64_t seed) {
    auto g = graph::gen_grid(side, side, labels, "ab", LabelMode::edge, seed);
    return {"grid-" + std::to_string(side), std::move(g), 0, static_cast<int>(side * side - 1)};
}

Instance grid_trap_instance(std::size_t side) {
    if (side < 2) throw InvalidArgument("grid trap needs side >= 2");
    const std::size_t n = side * side;
    const int center = static_cast<int>((side / 2) * side + side / 2 - (side % 2 == 0 ? 1 : 0));
    const int pendant = static_cast<int>(n);
    std::vector<Edge> edges;
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < side; ++c) {
            const int u = static_cast<int>(r * side + c);
            if (c + 1 < side) {
                edges.push_back({u, u + 1, 'a'});
                edges.push_back({u + 1, u, 'a'});
            }
            if (r + 1 < side) {
                edges.push_back({u, u + static_cast<int>(side), 'a'});
                edges.push_back({u + static_cast<int>(side), u, 'a'});
            }
        }
    edges.push_back({center, pendant, 'a'});
    edges.push_back({pendant, center, 'b'});
    return {"grid-trap-" + std::to_string(side), LabeledGraph(LabelMode::edge, n + 1, {}, std::move(edges)), 0,
            static_cast<int>(n - 1)};
}

std::optional<Instance> make_instance(const std::string& family, std::size_t size, std::uint64_t seed) {
    if (family == "chain") return chain_instance(size);
    if (family == "diamond") return diamond_instance(size);
    if (family == "grid") return grid_instance(size, graph::GridLabels::alternating, seed);
    if (family == "grid-random") return grid_instance(size, graph::GridLabels::random, seed);
    if (family == "grid-trap") return grid_trap_instance(size);
    return std::nullopt;
}

Row run(const Instance& inst, const automata::Dfa& d, const std::string& engine, const EngineConfig& config) {
    Row row;
    row.instance = inst.name;
    row.vertices = inst.graph.num_vertices();
    row.edges = inst.graph.num_edges();
    row.engine = engine;
    row.outcome = "unsupported";
    const auto start = std::chrono::steady_clock::now();
    try {
        std::optional<engines::QueryResult> r;
        if (engine == "brute") {
            r = engines::brute_query(inst.graph, d, inst.x, inst.y, config.want, config.limits);
        } else if (engine == "tractable") {
            auto verdict = classify::classify(d, inst.graph.mode(), config.limits);
            if (verdict.tractable()) {
                engines::TractableEngine te(d, *verdict.decomposition(), config.limits);
                r = te.query(inst.graph, inst.x, inst.y, config.want);
            }
        } else if (engine == "color-coding") {
            if (config.max_edges)
                r = engines::color_coding_query(inst.graph, d, inst.x, inst.y,
                                                {*config.max_edges, config.delta, config.seed}, config.want,
                                                config.limits);
        } else {
            throw InvalidArgument("unknown engine '" + engine + "'");
        }
        if (r) {
            row.outcome = r->answer ? "yes" : "no";
            row.expansions = r->stats.expansions;
            row.trials = r->stats.trials;
            row.length = r->length;
        }
    } catch (const ResourceError& e) {
        row.outcome = "budget";
        if (e.cap() == "max_expansions") row.expansions = e.limit();
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

} // namespace rspq::bench
