#include <algorithm>

#include "rspq/engines.hpp"
#include "rspq/error.hpp"

namespace rspq::engines {

namespace {

class Backtracker {
public:
    Backtracker(const Product& p, int y, const Limits& limits, QueryStats& stats)
        : p_(p), g_(p.graph()), y_(y), nq_(p.dfa().num_states()), dist_(p.distances_to(y)), limits_(limits),
          stats_(stats), on_path_(g_.num_vertices(), false) {}

    int lower_bound(int v, int q) const { return dist_[static_cast<std::size_t>(v) * nq_ + static_cast<std::size_t>(q)]; }

    /// Depth-first search for a simple path of at most `budget` edges.
    bool search(int x, int q0, int budget, std::vector<int>& vs, std::vector<std::size_t>& es) {
        struct Frame {
            int v, q;
            std::size_t next;
        };
        vs.assign(1, x);
        es.clear();
        std::fill(on_path_.begin(), on_path_.end(), false);
        on_path_[static_cast<std::size_t>(x)] = true;
        std::vector<Frame> stack{{x, q0, 0}};
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& adj = g_.out_edges(f.v);
            if (f.next == adj.size()) {
                on_path_[static_cast<std::size_t>(f.v)] = false;
                stack.pop_back();
                vs.pop_back();
                if (!es.empty()) es.pop_back();
                continue;
            }
            const std::size_t e = adj[f.next++];
            const int v = g_.edge(e).to;
            if (on_path_[static_cast<std::size_t>(v)]) continue;
            const int r = p_.step(f.q, e);
            if (r < 0) continue;
            const int lb = lower_bound(v, r);
            const int depth = static_cast<int>(es.size()) + 1;
            if (lb == Product::kUnreachable || depth + lb > budget) continue;
            if (++stats_.expansions > limits_.max_expansions) throw ResourceError("max_expansions", limits_.max_expansions);
            vs.push_back(v);
            es.push_back(e);
            if (v == y_) {
                if (p_.dfa().is_accepting(r)) return true;
                vs.pop_back();
                es.pop_back();
                continue;
            }
            on_path_[static_cast<std::size_t>(v)] = true;
            stack.push_back({v, r, 0});
        }
        return false;
    }

private:
    const Product& p_;
    const LabeledGraph& g_;
    int y_;
    std::size_t nq_;
    std::vector<int> dist_;
    const Limits& limits_;
    QueryStats& stats_;
    std::vector<bool> on_path_;
};

void check_endpoints(const LabeledGraph& g, const Dfa&, int x, int y) {
    auto ok = [&](int v) { return v >= 0 && static_cast<std::size_t>(v) < g.num_vertices(); };
    if (!ok(x) || !ok(y)) throw InvalidArgument("query endpoint out of range");
}

} // namespace

QueryResult brute_query(const LabeledGraph& g, const Dfa& d, int x, int y, Want want, const Limits& limits) {
    check_endpoints(g, d, x, y);
    QueryResult result;
    result.engine = "brute";
    Product product(g, d);
    const int q0 = product.start_state(x);
    if (q0 < 0) return result;
    if (x == y) {
        if (d.is_accepting(q0)) {
            result.answer = true;
            result.witness = graph::make_witness(g, {x}, {});
            result.length = 0;
        }
        return result;
    }
    Backtracker search(product, y, limits, result.stats);
    const int lb = search.lower_bound(x, q0);
    if (lb == Product::kUnreachable) return result;

    const int longest = static_cast<int>(g.num_vertices()) - 1;
    std::vector<int> vs;
    std::vector<std::size_t> es;
    bool found = false;
    if (want == Want::exists) {
        found = search.search(x, q0, longest, vs, es);
    } else {
        // Iterative deepening: the first budget that succeeds is the minimum.
        for (int budget = lb; budget <= longest && !found; ++budget) found = search.search(x, q0, budget, vs, es);
    }
    if (found) {
        result.answer = true;
        result.witness = graph::make_witness(g, vs, es);
        result.length = es.size();
    }
    return result;
}

} // namespace rspq::engines
