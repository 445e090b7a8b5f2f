#include <algorithm>
#include <unordered_map>

#include "rspq/engines.hpp"
#include "rspq/error.hpp"

namespace rspq::engines {

Product::Product(const LabeledGraph& g, const Dfa& d) : g_(g), d_(d), syms_(g.num_edges(), {kNone, kNone}) {
    auto code = [&](char c) {
        auto s = d.symbol_index(c);
        return s ? static_cast<int>(*s) : kBlocked;
    };
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto& edge = g.edge(e);
        std::size_t i = 0;
        if (edge.label) syms_[e][i++] = code(*edge.label);
        if (has_vertex_labels(g.mode())) syms_[e][i++] = code(*g.vertex_label(edge.to));
    }
}

int Product::start_state(int x) const {
    if (!has_vertex_labels(g_.mode())) return d_.initial();
    auto s = d_.symbol_index(*g_.vertex_label(x));
    return s ? d_.next(d_.initial(), *s) : -1;
}

std::vector<int> Product::distances_to(int y) const {
    const std::size_t nq = d_.num_states();
    std::vector<int> dist(g_.num_vertices() * nq, kUnreachable);
    std::vector<std::pair<int, int>> queue;
    for (int q : d_.accepting().members()) {
        dist[static_cast<std::size_t>(y) * nq + static_cast<std::size_t>(q)] = 0;
        queue.emplace_back(y, q);
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        auto [v, q2] = queue[i];
        const int dv = dist[static_cast<std::size_t>(v) * nq + static_cast<std::size_t>(q2)];
        for (std::size_t e : g_.in_edges(v)) {
            const int u = g_.edge(e).from;
            if (u == y) continue;
            for (std::size_t q = 0; q < nq; ++q) {
                auto& slot = dist[static_cast<std::size_t>(u) * nq + q];
                if (slot == kUnreachable && step(static_cast<int>(q), e) == q2) {
                    slot = dv + 1;
                    queue.emplace_back(u, static_cast<int>(q));
                }
            }
        }
    }
    return dist;
}

std::optional<ProductPath> product_reachable(const LabeledGraph& g, const Dfa& d, int start, int start_state, int target,
                                             const StateSet& accepting, const VertexSet& forbidden, Want) {
    const std::size_t nq = d.num_states();
    auto node = [nq](int v, int q) { return static_cast<std::size_t>(v) * nq + static_cast<std::size_t>(q); };
    if (start_state < 0) return std::nullopt;
    if (start == target && accepting.contains(static_cast<std::size_t>(start_state)))
        return ProductPath{{start}, {}, start_state};

    Product product(g, d);
    constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);
    std::unordered_map<std::size_t, std::pair<std::size_t, std::size_t>> parent; // node -> (node, edge)
    std::vector<std::pair<int, int>> queue{{start, start_state}};
    parent.emplace(node(start, start_state), std::make_pair(kNoParent, kNoParent));
    for (std::size_t i = 0; i < queue.size(); ++i) {
        auto [u, q] = queue[i];
        if (u != start && forbidden.contains(static_cast<std::size_t>(u))) continue;
        for (std::size_t e : g.out_edges(u)) {
            const int v = g.edge(e).to;
            const int r = product.step(q, e);
            if (r < 0) continue;
            if (v != target && forbidden.contains(static_cast<std::size_t>(v))) continue;
            if (!parent.emplace(node(v, r), std::make_pair(node(u, q), e)).second) continue;
            if (v == target && accepting.contains(static_cast<std::size_t>(r))) {
                ProductPath path;
                path.state = r;
                for (std::size_t at = node(v, r); at != kNoParent;) {
                    path.vertices.push_back(static_cast<int>(at / nq));
                    auto [prev, edge] = parent.at(at);
                    if (edge != kNoParent) path.edges.push_back(edge);
                    at = prev;
                }
                std::reverse(path.vertices.begin(), path.vertices.end());
                std::reverse(path.edges.begin(), path.edges.end());
                return path;
            }
            queue.emplace_back(v, r);
        }
    }
    return std::nullopt;
}

void excise_cycles(std::vector<int>& vertices, std::vector<std::size_t>& edges) {
    if (vertices.empty()) return;
    std::vector<int> rv{vertices[0]};
    std::vector<std::size_t> re;
    std::unordered_map<int, std::size_t> pos{{vertices[0], 0}};
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const int v = vertices[i + 1];
        if (auto it = pos.find(v); it != pos.end()) {
            const std::size_t j = it->second;
            for (std::size_t t = j + 1; t < rv.size(); ++t) pos.erase(rv[t]);
            rv.resize(j + 1);
            re.resize(j);
        } else {
            re.push_back(edges[i]);
            rv.push_back(v);
            pos.emplace(v, rv.size() - 1);
        }
    }
    vertices = std::move(rv);
    edges = std::move(re);
}

bool bounded_simple_paths(const LabeledGraph& g, int from, int k, const VertexSet& avoid, Direction direction,
                          const PathVisitor& visit, const Limits& limits) {
    if (k < 0) throw InvalidArgument("bounded_simple_paths: negative length");
    if (k > limits.max_level) throw ResourceError("max_level", static_cast<std::uint64_t>(limits.max_level));
    if (avoid.contains(static_cast<std::size_t>(from))) return true;
    const bool fwd = direction == Direction::forward;
    std::vector<bool> on_path(g.num_vertices(), false);
    std::vector<int> vs{from};
    std::vector<std::size_t> es;
    on_path[static_cast<std::size_t>(from)] = true;
    std::vector<std::size_t> cursor{0}; // next adjacency index per depth
    std::vector<int> rv;
    std::vector<std::size_t> re;

    auto emit = [&] {
        if (fwd) return visit(vs, es);
        rv.assign(vs.rbegin(), vs.rend());
        re.assign(es.rbegin(), es.rend());
        return visit(rv, re);
    };
    if (k == 0) return emit();
    while (!cursor.empty()) {
        const int u = vs.back();
        const auto& adj = fwd ? g.out_edges(u) : g.in_edges(u);
        std::size_t& c = cursor.back();
        if (c == adj.size()) {
            cursor.pop_back();
            on_path[static_cast<std::size_t>(u)] = false;
            vs.pop_back();
            if (!es.empty()) es.pop_back();
            continue;
        }
        const std::size_t e = adj[c++];
        const int v = fwd ? g.edge(e).to : g.edge(e).from;
        if (on_path[static_cast<std::size_t>(v)] || avoid.contains(static_cast<std::size_t>(v))) continue;
        vs.push_back(v);
        es.push_back(e);
        if (static_cast<int>(es.size()) == k) {
            bool more = emit();
            vs.pop_back();
            es.pop_back();
            if (!more) return false;
            continue;
        }
        on_path[static_cast<std::size_t>(v)] = true;
        cursor.push_back(0);
    }
    return true;
}

} // namespace rspq::engines
