#include "rspq/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "rspq/automata/alphabet.hpp"
#include "rspq/error.hpp"
#include "rspq/random.hpp"

namespace rspq::graph {

namespace {

bool is_label_char(char c) { return c > ' ' && c < 127 && c != '#'; }

std::string describe(const Edge& e) {
    std::string s = "edge " + std::to_string(e.from) + " " + std::to_string(e.to);
    if (e.label) s += std::string(" ") + *e.label;
    return s;
}

} // namespace

LabeledGraph::LabeledGraph(LabelMode mode, std::size_t n, std::vector<std::optional<char>> vertex_labels,
                           std::vector<Edge> edges)
    : mode_(mode), n_(n), vertex_labels_(std::move(vertex_labels)), edges_(std::move(edges)), out_(n), in_(n) {
    if (vertex_labels_.empty() && !has_vertex_labels(mode)) vertex_labels_.assign(n, std::nullopt);
    if (vertex_labels_.size() != n) throw InvalidArgument("vertex label table does not match the vertex count");
    for (std::size_t v = 0; v < n; ++v) {
        const auto& l = vertex_labels_[v];
        if (l.has_value() != has_vertex_labels(mode))
            throw InvalidArgument("vertex " + std::to_string(v) + (l ? " has a label" : " lacks a label") + " in " +
                                  to_string(mode) + " mode");
        if (l && !is_label_char(*l)) throw InvalidArgument("vertex " + std::to_string(v) + " has an unprintable label");
    }
    std::set<std::tuple<int, int, std::optional<char>>> seen;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.from < 0 || e.to < 0 || static_cast<std::size_t>(e.from) >= n || static_cast<std::size_t>(e.to) >= n)
            throw InvalidArgument(describe(e) + ": endpoint out of range");
        if (e.label.has_value() != has_edge_labels(mode))
            throw InvalidArgument(describe(e) + (e.label ? ": label" : ": missing label") + " in " + to_string(mode) + " mode");
        if (e.label && !is_label_char(*e.label)) throw InvalidArgument(describe(e) + ": unprintable label");
        if (!seen.emplace(e.from, e.to, e.label).second) throw InvalidArgument(describe(e) + ": duplicate edge");
        out_[static_cast<std::size_t>(e.from)].push_back(i);
        in_[static_cast<std::size_t>(e.to)].push_back(i);
    }
    auto by = [this](bool outgoing) {
        return [this, outgoing](std::size_t a, std::size_t b) {
            const Edge& x = edges_[a];
            const Edge& y = edges_[b];
            int xa = outgoing ? x.to : x.from, ya = outgoing ? y.to : y.from;
            return std::tie(xa, x.label, a) < std::tie(ya, y.label, b);
        };
    };
    for (auto& list : out_) std::sort(list.begin(), list.end(), by(true));
    for (auto& list : in_) std::sort(list.begin(), list.end(), by(false));
}

LabeledGraph parse_graph(std::string_view text) {
    std::optional<LabelMode> mode;
    std::size_t n = 0;
    std::vector<std::optional<char>> labels;
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_lines;
    std::set<std::tuple<int, int, std::optional<char>>> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        std::vector<std::string_view> tok;
        for (std::size_t i = 0; i < line.size();) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            if (j > i) tok.push_back(line.substr(i, j - i));
            i = j;
        }
        if (tok.empty()) continue;

        auto number = [&](std::string_view t, const char* what) {
            std::size_t v = 0;
            auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (ec != std::errc() || p != t.data() + t.size())
                throw ParseError(std::string("bad ") + what + " '" + std::string(t) + "'", line_no);
            return v;
        };
        auto vertex = [&](std::string_view t) {
            std::size_t v = number(t, "vertex");
            if (v >= n) throw ParseError("vertex " + std::to_string(v) + " out of range", line_no);
            return static_cast<int>(v);
        };
        auto label = [&](std::string_view t) {
            if (t.size() != 1 || !is_label_char(t[0]))
                throw ParseError("label must be a single character, got '" + std::string(t) + "'", line_no);
            return t[0];
        };

        if (!mode) {
            if (tok[0] != "graph" || tok.size() != 3) throw ParseError("expected 'graph <mode> <n>'", line_no);
            mode = parse_label_mode(tok[1]);
            if (!mode) throw ParseError("unknown mode '" + std::string(tok[1]) + "'", line_no);
            n = number(tok[2], "vertex count");
            if (n > (std::size_t{1} << 31)) throw ParseError("vertex count too large", line_no);
            labels.assign(n, std::nullopt);
            continue;
        }
        if (tok[0] == "node") {
            if (!has_vertex_labels(*mode)) throw ParseError("node label in " + to_string(*mode) + " graph", line_no);
            if (tok.size() != 3) throw ParseError("expected 'node <v> <label>'", line_no);
            int v = vertex(tok[1]);
            if (labels[static_cast<std::size_t>(v)]) throw ParseError("vertex " + std::to_string(v) + " labeled twice", line_no);
            labels[static_cast<std::size_t>(v)] = label(tok[2]);
        } else if (tok[0] == "edge") {
            const std::size_t want = has_edge_labels(*mode) ? 4 : 3;
            if (tok.size() != want)
                throw ParseError(has_edge_labels(*mode) ? "expected 'edge <u> <v> <label>'"
                                                        : "edge label in " + to_string(*mode) + " graph",
                                 line_no);
            Edge e{vertex(tok[1]), vertex(tok[2]), std::nullopt};
            if (want == 4) e.label = label(tok[3]);
            if (!seen.emplace(e.from, e.to, e.label).second) throw ParseError("duplicate " + describe(e), line_no);
            edges.push_back(e);
        } else {
            throw ParseError("unknown directive '" + std::string(tok[0]) + "'", line_no);
        }
    }
    if (!mode) throw ParseError("missing 'graph' header", line_no);
    if (has_vertex_labels(*mode))
        for (std::size_t v = 0; v < n; ++v)
            if (!labels[v]) throw ParseError("vertex " + std::to_string(v) + " has no label", line_no);
    try {
        return LabeledGraph(*mode, n, std::move(labels), std::move(edges));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), line_no);
    }
}

std::string serialize_graph(const LabeledGraph& g) {
    std::ostringstream out;
    out << "graph " << to_string(g.mode()) << ' ' << g.num_vertices() << '\n';
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (auto l = g.vertex_labels()[v]) out << "node " << v << ' ' << *l << '\n';
    for (const auto& e : g.edges()) out << describe(e) << '\n';
    return out.str();
}

std::string word_of_path(const LabeledGraph& g, const std::vector<int>& vertices, const std::vector<std::size_t>& edges) {
    if (vertices.empty()) throw InvalidArgument("empty path");
    if (edges.size() + 1 != vertices.size()) throw InvalidArgument("path needs one edge per step");
    for (int v : vertices)
        if (v < 0 || static_cast<std::size_t>(v) >= g.num_vertices())
            throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
    std::string word;
    if (has_vertex_labels(g.mode())) word += *g.vertex_label(vertices[0]);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i] >= g.num_edges()) throw InvalidArgument("edge index out of range");
        const Edge& e = g.edge(edges[i]);
        if (e.from != vertices[i] || e.to != vertices[i + 1])
            throw InvalidArgument("step " + std::to_string(i) + " is not an edge " + std::to_string(vertices[i]) +
                                  "->" + std::to_string(vertices[i + 1]));
        if (e.label) word += *e.label;
        if (has_vertex_labels(g.mode())) word += *g.vertex_label(e.to);
    }
    return word;
}

PathWitness make_witness(const LabeledGraph& g, std::vector<int> vertices, std::vector<std::size_t> edges) {
    std::string word = word_of_path(g, vertices, edges);
    return PathWitness{std::move(vertices), std::move(edges), std::move(word)};
}

std::optional<std::string> witness_defect(const LabeledGraph& g, const PathWitness& w, int x, int y) {
    if (w.vertices.empty()) return "empty path";
    if (w.vertices.front() != x || w.vertices.back() != y) return "path does not run from x to y";
    std::string word;
    try {
        word = word_of_path(g, w.vertices, w.edges);
    } catch (const InvalidArgument& e) {
        return std::string(e.what());
    }
    std::vector<int> sorted = w.vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return "path repeats a vertex";
    if (word != w.word) return "stored word '" + w.word + "' differs from path word '" + word + "'";
    return std::nullopt;
}

LabeledGraph gen_random(std::size_t n, std::size_t m, std::string_view alphabet, LabelMode mode, std::uint64_t seed) {
    const std::string alpha = automata::normalize_alphabet(alphabet);
    if (alpha.empty()) throw InvalidArgument("gen_random: empty alphabet");
    if (n > (std::size_t{1} << 20)) throw InvalidArgument("gen_random: too many vertices");
    const std::uint64_t per_pair = has_edge_labels(mode) ? alpha.size() : 1;
    const std::uint64_t total = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) * per_pair;
    if (m > total)
        throw InvalidArgument("gen_random: " + std::to_string(m) + " edges requested, at most " + std::to_string(total) +
                              " possible");

    std::mt19937_64 rng(seed);
    std::vector<std::optional<char>> labels(n);
    if (has_vertex_labels(mode))
        for (auto& l : labels) l = alpha[uniform_below(rng, alpha.size())];

    // Floyd's sampling: a uniform m-subset of [0, total).
    std::set<std::uint64_t> chosen;
    for (std::uint64_t j = total - m; j < total; ++j) {
        std::uint64_t t = uniform_below(rng, j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::uint64_t code : chosen) {
        std::uint64_t c = code % per_pair;
        std::uint64_t pair = code / per_pair;
        auto u = static_cast<int>(pair / (n - 1));
        auto v = static_cast<int>(pair % (n - 1));
        if (v >= u) ++v;
        Edge e{u, v, std::nullopt};
        if (has_edge_labels(mode)) e.label = alpha[c];
        edges.push_back(e);
    }
    return LabeledGraph(mode, n, std::move(labels), std::move(edges));
}

std::optional<GridLabels> parse_grid_labels(std::string_view text) {
    if (text == "constant") return GridLabels::constant;
    if (text == "alternating") return GridLabels::alternating;
    if (text == "random") return GridLabels::random;
    return std::nullopt;
}

LabeledGraph gen_grid(std::size_t w, std::size_t h, GridLabels scheme, std::string_view alphabet, LabelMode mode,
                      std::uint64_t seed) {
    if (w == 0 || h == 0) throw InvalidArgument("gen_grid: dimensions must be positive");
    const std::string alpha = automata::normalize_alphabet(alphabet);
    if (alpha.empty()) throw InvalidArgument("gen_grid: empty alphabet");
    if (w * h > (std::size_t{1} << 24)) throw InvalidArgument("gen_grid: grid too large");
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t r, std::size_t c) {
        switch (scheme) {
        case GridLabels::constant: return alpha[0];
        case GridLabels::alternating: return alpha[(r + c) % alpha.size()];
        case GridLabels::random: return alpha[uniform_below(rng, alpha.size())];
        }
        return alpha[0];
    };
    const std::size_t n = w * h;
    std::vector<std::optional<char>> labels(n);
    if (has_vertex_labels(mode))
        for (std::size_t r = 0; r < h; ++r)
            for (std::size_t c = 0; c < w; ++c) labels[r * w + c] = pick(r, c);
    std::vector<Edge> edges;
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c) {
            const int u = static_cast<int>(r * w + c);
            auto add = [&](std::size_t v) {
                Edge e{u, static_cast<int>(v), std::nullopt};
                if (has_edge_labels(mode)) e.label = pick(r, c);
                edges.push_back(e);
            };
            if (c + 1 < w) add(r * w + c + 1);
            if (r + 1 < h) add((r + 1) * w + c);
        }
    return LabeledGraph(mode, n, std::move(labels), std::move(edges));
}

EdgeForm to_edge_form(const LabeledGraph& g) {
    EdgeForm form;
    const std::size_t n = g.num_vertices();
    std::vector<Edge> edges;
    switch (g.mode()) {
    case LabelMode::edge:
        edges = g.edges();
        break;
    case LabelMode::vertex:
        for (const auto& e : g.edges()) edges.push_back({e.from, e.to, g.vertex_label(e.to)});
        break;
    case LabelMode::vertex_edge:
        for (std::size_t i = 0; i < g.num_edges(); ++i) {
            const Edge& e = g.edge(i);
            const int mid = static_cast<int>(n + i);
            edges.push_back({e.from, mid, e.label});
            edges.push_back({mid, e.to, g.vertex_label(e.to)});
        }
        break;
    }
    const std::size_t total = g.mode() == LabelMode::vertex_edge ? n + g.num_edges() : n;
    form.original_vertex.assign(total, -1);
    for (std::size_t v = 0; v < n; ++v) form.original_vertex[v] = static_cast<int>(v);
    for (std::size_t i = 0; i < edges.size(); ++i)
        form.original_edge.push_back(g.mode() == LabelMode::vertex_edge ? i / 2 : i);
    form.graph = LabeledGraph(LabelMode::edge, total, {}, std::move(edges));
    return form;
}

PathWitness from_edge_form(const LabeledGraph& g, const EdgeForm& form, const PathWitness& path) {
    std::vector<int> vertices;
    for (int v : path.vertices) {
        int o = form.original_vertex.at(static_cast<std::size_t>(v));
        if (o >= 0) vertices.push_back(o);
    }
    std::vector<std::size_t> edges;
    for (std::size_t e : path.edges)
        if (form.original_vertex.at(static_cast<std::size_t>(form.graph.edge(e).to)) >= 0)
            edges.push_back(form.original_edge.at(e));
    return make_witness(g, std::move(vertices), std::move(edges));
}

} // namespace rspq::graph
