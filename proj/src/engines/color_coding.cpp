#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "rspq/engines.hpp"
#include "rspq/error.hpp"
#include "rspq/random.hpp"

namespace rspq::engines {

namespace {

constexpr std::size_t kMaxEdges = 30; // colors fit a 32-bit mask

struct Key {
    std::uint32_t colors;
    int v;
    int q;
    bool operator==(const Key&) const = default;
};

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
        return static_cast<std::size_t>(splitmix64((std::uint64_t{k.colors} << 32) ^
                                                   (static_cast<std::uint64_t>(k.v) << 8) ^ static_cast<std::uint64_t>(k.q)));
    }
};

struct Entry {
    Key key;
    std::size_t parent;
    std::size_t edge;
};

struct Path {
    std::vector<int> vertices;
    std::vector<std::size_t> edges;
};

class ColorfulSearch {
public:
    ColorfulSearch(const Product& p, int y)
        : p_(p), g_(p.graph()), y_(y), nq_(p.dfa().num_states()), dist_(p.distances_to(y)) {}

    int lower_bound(int v, int q) const { return dist_[static_cast<std::size_t>(v) * nq_ + static_cast<std::size_t>(q)]; }

    /// Shortest colorful x-to-y path under `color`, of at most `limit` edges.
    std::optional<Path> run(int x, int q0, const std::vector<std::uint8_t>& color, std::size_t limit, std::uint64_t& work) {
        std::vector<std::vector<Entry>> layers(1);
        layers[0].push_back({{std::uint32_t{1} << color[static_cast<std::size_t>(x)], x, q0}, 0, 0});
        std::unordered_map<Key, std::size_t, KeyHash> index;
        for (std::size_t len = 1; len <= limit; ++len) {
            const auto& prev = layers[len - 1];
            std::vector<Entry> next;
            index.clear();
            for (std::size_t i = 0; i < prev.size(); ++i) {
                const Key& from = prev[i].key;
                if (from.v == y_) continue;
                for (std::size_t e : g_.out_edges(from.v)) {
                    const int v = g_.edge(e).to;
                    const std::uint32_t bit = std::uint32_t{1} << color[static_cast<std::size_t>(v)];
                    if (from.colors & bit) continue;
                    const int r = p_.step(from.q, e);
                    if (r < 0) continue;
                    const int lb = lower_bound(v, r);
                    if (lb == Product::kUnreachable || len + static_cast<std::size_t>(lb) > limit) continue;
                    ++work;
                    Key key{from.colors | bit, v, r};
                    if (!index.emplace(key, next.size()).second) continue;
                    next.push_back({key, i, e});
                    if (v == y_ && p_.dfa().is_accepting(r)) {
                        layers.push_back(std::move(next));
                        return unwind(layers);
                    }
                }
            }
            if (next.empty()) return std::nullopt;
            layers.push_back(std::move(next));
        }
        return std::nullopt;
    }

private:
    static Path unwind(const std::vector<std::vector<Entry>>& layers) {
        Path path;
        std::size_t at = layers.back().size() - 1;
        for (std::size_t layer = layers.size() - 1;; --layer) {
            const Entry& entry = layers[layer][at];
            path.vertices.push_back(entry.key.v);
            if (layer == 0) break;
            path.edges.push_back(entry.edge);
            at = entry.parent;
        }
        std::reverse(path.vertices.begin(), path.vertices.end());
        std::reverse(path.edges.begin(), path.edges.end());
        return path;
    }

    const Product& p_;
    const LabeledGraph& g_;
    int y_;
    std::size_t nq_;
    std::vector<int> dist_;
};

} // namespace

std::uint64_t color_coding_trials(std::size_t max_edges, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("failure probability must lie strictly between 0 and 1");
    const double n = std::ceil(std::exp(static_cast<double>(max_edges) + 1.0) * std::log(1.0 / delta));
    if (!(n < 1e18)) return UINT64_MAX;
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(n));
}

QueryResult color_coding_query(const LabeledGraph& g, const Dfa& d, int x, int y, const ColorCodingOptions& options,
                               Want want, const Limits& limits) {
    auto in_range = [&](int v) { return v >= 0 && static_cast<std::size_t>(v) < g.num_vertices(); };
    if (!in_range(x) || !in_range(y)) throw InvalidArgument("query endpoint out of range");
    if (options.max_edges > kMaxEdges) throw ResourceError("max_edges", kMaxEdges);
    const std::uint64_t trials = color_coding_trials(options.max_edges, options.delta);
    if (trials > limits.max_trials) throw ResourceError("max_trials", limits.max_trials);

    QueryResult result;
    result.engine = "color-coding";
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

    ColorfulSearch search(product, y);
    const int lb = search.lower_bound(x, q0);
    // No accepted walk this short means no simple path either; skip the trials.
    if (lb == Product::kUnreachable || static_cast<std::size_t>(lb) > options.max_edges) return result;

    const std::size_t colors = options.max_edges + 1;
    std::vector<std::uint8_t> color(g.num_vertices());
    std::optional<Path> best;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(splitmix64(options.seed ^ splitmix64(t)));
        for (auto& c : color) c = static_cast<std::uint8_t>(uniform_below(rng, colors));
        ++result.stats.trials;
        const std::size_t limit = best ? best->edges.size() - 1 : options.max_edges;
        if (auto path = search.run(x, q0, color, limit, result.stats.expansions)) {
            best = std::move(path);
            if (want == Want::exists || best->edges.size() == static_cast<std::size_t>(lb)) break;
        }
    }
    if (!best) return result;
    PathWitness w = graph::make_witness(g, std::move(best->vertices), std::move(best->edges));
    if (auto defect = graph::witness_defect(g, w, x, y)) throw std::logic_error("colorful path invalid: " + *defect);
    if (!d.accepts(w.word)) throw std::logic_error("colorful path word rejected");
    result.answer = true;
    result.length = w.length();
    result.witness = std::move(w);
    return result;
}

} // namespace rspq::engines
