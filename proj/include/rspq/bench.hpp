#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rspq/engines.hpp"
#include "rspq/graph.hpp"

namespace rspq::bench {

struct Instance {
    std::string name;
    graph::LabeledGraph graph;
    int x = 0;
    int y = 0;
};

/// a-chain of n vertices ending in one b-edge; x = 0, y = n - 1.
Instance chain_instance(std::size_t n);

/// x -a-> c, a chain of d a-labeled diamonds from c back to c, then c -b-> y.
/// Every accepted walk for aaa*b revisits c, so the answer is no, and
/// exhaustive search examines all 2^d diamond routes.
Instance diamond_instance(std::size_t d);

/// side×side grid, corner to corner.
Instance grid_instance(std::size_t side, graph::GridLabels labels, std::uint64_t seed = 0);

/// Bidirectional a-labeled side×side grid plus a pendant vertex w hanging off
/// a central vertex c by c -a-> w -b-> c; corner to corner. For a*ba* every
/// accepted walk revisits c, so the answer is no.
Instance grid_trap_instance(std::size_t side);

std::optional<Instance> make_instance(const std::string& family, std::size_t size, std::uint64_t seed = 0);

struct Row {
    std::string instance;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::string engine;
    std::string outcome; ///< yes, no, budget, or unsupported
    double seconds = 0;
    std::uint64_t expansions = 0;
    std::uint64_t trials = 0;
    std::optional<std::size_t> length;
};

struct EngineConfig {
    engines::Want want = engines::Want::exists;
    std::optional<std::size_t> max_edges; ///< required for color-coding
    double delta = 0.01;
    std::uint64_t seed = 1;
    Limits limits;
};

/// Time one engine on one instance. "unsupported" when the engine cannot
/// run (no certificate, no path bound); "budget" when a cap fired.
Row run(const Instance& inst, const automata::Dfa& d, const std::string& engine, const EngineConfig& config);

} // namespace rspq::bench
