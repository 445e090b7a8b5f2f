#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rspq/automata/dfa.hpp"
#include "rspq/classify.hpp"
#include "rspq/graph.hpp"
#include "rspq/limits.hpp"

namespace rspq::engines {

using automata::Dfa;
using graph::LabeledGraph;
using graph::PathWitness;

enum class Want { exists, shortest };

struct QueryStats {
    std::uint64_t expansions = 0;
    std::uint64_t trials = 0;
};

struct QueryResult {
    bool answer = false;
    std::optional<PathWitness> witness;
    std::optional<std::size_t> length; ///< witness length in edges; minimal in shortest mode
    std::string engine;
    QueryStats stats;
};

/// DFA stepping along graph edges. An edge reads its own label (edge modes)
/// followed by its head's label (vertex modes); a path additionally starts
/// by reading the label of its first vertex. Unknown labels block the step.
class Product {
public:
    Product(const LabeledGraph& g, const Dfa& d);

    const LabeledGraph& graph() const noexcept { return g_; }
    const Dfa& dfa() const noexcept { return d_; }
    /// State after the first vertex of a path at x, or -1.
    int start_state(int x) const;
    /// State after traversing edge e from state q, or -1.
    int step(int q, std::size_t e) const noexcept {
        int r = q;
        for (int s : syms_[e]) {
            if (s == kNone) break;
            if (s == kBlocked) return -1;
            r = d_.next(r, static_cast<std::size_t>(s));
        }
        return r;
    }

    static constexpr int kUnreachable = -1;
    /// Length of the shortest product walk from each (v, q) to (y, accepting),
    /// never passing through y before the end. Indexed v * |Q| + q.
    std::vector<int> distances_to(int y) const;

private:
    static constexpr int kNone = -2;
    static constexpr int kBlocked = -3;
    const LabeledGraph& g_;
    const Dfa& d_;
    std::vector<std::array<int, 2>> syms_;
};

struct ProductPath {
    std::vector<int> vertices;
    std::vector<std::size_t> edges;
    int state = 0;

    std::size_t distance() const noexcept { return edges.size(); }
};

/// Breadth-first search over (vertex, state) from (start, start_state) to
/// (target, any state of `accepting`); intermediate vertices avoid `forbidden`.
/// The result is a shortest walk, which may repeat vertices.
std::optional<ProductPath> product_reachable(const LabeledGraph& g, const Dfa& d, int start, int start_state, int target,
                                             const StateSet& accepting, const VertexSet& forbidden,
                                             Want want = Want::shortest);

/// Drop closed sub-walks until the walk is a simple path.
void excise_cycles(std::vector<int>& vertices, std::vector<std::size_t>& edges);

enum class Direction { forward, backward };

/// Calls `visit(vertices, edges)` for each simple path with exactly k edges
/// starting at `from` (or ending there, for backward), touching no vertex of
/// `avoid`. Paths are listed first-to-last vertex. Stops early when `visit`
/// returns false; the return value says whether enumeration completed.
using PathVisitor = std::function<bool(const std::vector<int>&, const std::vector<std::size_t>&)>;
bool bounded_simple_paths(const LabeledGraph& g, int from, int k, const VertexSet& avoid, Direction direction,
                          const PathVisitor& visit, const Limits& limits = {});

/// Exact backtracking search; the reference oracle.
QueryResult brute_query(const LabeledGraph& g, const Dfa& d, int x, int y, Want want, const Limits& limits = {});

/// Polynomial engine driven by a verified decomposition certificate.
class TractableEngine {
public:
    /// Throws InvalidArgument when the certificate does not verify against d.
    TractableEngine(const Dfa& d, classify::Decomposition dec, const Limits& limits = {});

    QueryResult query(const LabeledGraph& g, int x, int y, Want want) const;
    const classify::Decomposition& decomposition() const noexcept { return base_->dec; }

private:
    struct Prepared {
        Dfa dfa;
        classify::Decomposition dec;
        std::map<std::pair<std::string, std::string>, std::size_t> component;
        std::set<std::string> prefixes, suffixes, shorts;
    };
    static std::shared_ptr<const Prepared> prepare(Dfa d, classify::Decomposition dec);
    std::shared_ptr<const Prepared> quotient(char lead) const;

    Dfa original_;
    Limits limits_;
    std::shared_ptr<const Prepared> base_;
    mutable std::mutex mutex_;
    mutable std::map<char, std::shared_ptr<const Prepared>> quotients_;
};

QueryResult tractable_query(const LabeledGraph& g, const classify::Decomposition& dec, const Dfa& d, int x, int y,
                            Want want, const Limits& limits = {});

struct ColorCodingOptions {
    std::size_t max_edges = 8;
    double delta = 0.01;
    std::uint64_t seed = 1;
};

/// Trials needed for failure probability delta at path length max_edges.
std::uint64_t color_coding_trials(std::size_t max_edges, double delta);

/// Randomized search for simple paths of at most max_edges edges. A yes is
/// always correct; a no is wrong with probability at most delta.
QueryResult color_coding_query(const LabeledGraph& g, const Dfa& d, int x, int y, const ColorCodingOptions& options,
                               Want want, const Limits& limits = {});

} // namespace rspq::engines
