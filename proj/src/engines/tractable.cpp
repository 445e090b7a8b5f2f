#include <algorithm>
#include <stdexcept>

#include "rspq/automata/automata.hpp"
#include "rspq/engines.hpp"
#include "rspq/error.hpp"

namespace rspq::engines {

namespace {

struct Candidate {
    std::vector<int> vertices;
    std::vector<std::size_t> edges;
};

std::string word_on(const LabeledGraph& h, const std::vector<std::size_t>& edges) {
    std::string w;
    for (auto e : edges) w += *h.edge(e).label;
    return w;
}

std::vector<Candidate> collect(const LabeledGraph& h, int from, int k, const VertexSet& avoid, Direction dir,
                               const std::set<std::string>& words, const Limits& limits) {
    std::vector<Candidate> out;
    bounded_simple_paths(
        h, from, k, avoid, dir,
        [&](const std::vector<int>& vs, const std::vector<std::size_t>& es) {
            if (words.count(word_on(h, es)) == 0) return true;
            if (out.size() >= limits.max_enumerated) throw ResourceError("max_enumerated", limits.max_enumerated);
            out.push_back({vs, es});
            return true;
        },
        limits);
    return out;
}

} // namespace

std::shared_ptr<const TractableEngine::Prepared> TractableEngine::prepare(Dfa d, classify::Decomposition dec) {
    auto p = std::make_shared<Prepared>(Prepared{std::move(d), std::move(dec), {}, {}, {}, {}});
    for (std::size_t i = 0; i < p->dec.components.size(); ++i) {
        const auto& c = p->dec.components[i];
        p->component.emplace(std::make_pair(c.prefix, c.suffix), i);
        p->prefixes.insert(c.prefix);
        p->suffixes.insert(c.suffix);
    }
    p->shorts.insert(p->dec.short_words.begin(), p->dec.short_words.end());
    return p;
}

TractableEngine::TractableEngine(const Dfa& d, classify::Decomposition dec, const Limits& limits)
    : original_(d), limits_(limits) {
    if (auto defect = classify::decomposition_defect(d, dec, limits))
        throw InvalidArgument("tractable engine: certificate rejected: " + *defect);
    base_ = prepare(d, std::move(dec));
}

std::shared_ptr<const TractableEngine::Prepared> TractableEngine::quotient(char lead) const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = quotients_.find(lead); it != quotients_.end()) return it->second;
    std::shared_ptr<const Prepared> p;
    if (auto s = original_.symbol_index(lead)) {
        // A left quotient keeps every middle subword-closed, so the same level certifies it.
        Dfa q = automata::minimize(original_.with_initial(original_.next(original_.initial(), *s)));
        try {
            auto dec = classify::build_decomposition(q, base_->dec.level, limits_);
            p = prepare(std::move(q), std::move(dec));
        } catch (const InvalidArgument& e) {
            throw std::logic_error(std::string("quotient lost its certificate: ") + e.what());
        }
    }
    quotients_.emplace(lead, p);
    return p;
}

QueryResult TractableEngine::query(const LabeledGraph& g, int x, int y, Want want) const {
    auto in_range = [&](int v) { return v >= 0 && static_cast<std::size_t>(v) < g.num_vertices(); };
    if (!in_range(x) || !in_range(y)) throw InvalidArgument("query endpoint out of range");
    QueryResult result;
    result.engine = "tractable";

    std::shared_ptr<const Prepared> prep = has_vertex_labels(g.mode()) ? quotient(*g.vertex_label(x)) : base_;
    if (!prep) return result;
    const Dfa& d = prep->dfa;

    auto finish = [&](std::vector<int> vs, std::vector<std::size_t> es, const graph::EdgeForm* form) {
        PathWitness w = form ? graph::from_edge_form(g, *form, graph::make_witness(form->graph, vs, es))
                             : graph::make_witness(g, std::move(vs), std::move(es));
        if (auto defect = graph::witness_defect(g, w, x, y)) throw std::logic_error("tractable witness invalid: " + *defect);
        if (!original_.accepts(w.word)) throw std::logic_error("tractable witness word '" + w.word + "' rejected");
        result.answer = true;
        result.length = w.length();
        result.witness = std::move(w);
        return result;
    };

    if (x == y) {
        if (d.is_accepting(d.initial())) return finish({x}, {}, nullptr);
        return result;
    }

    std::optional<graph::EdgeForm> form;
    if (g.mode() != LabelMode::edge) form = graph::to_edge_form(g);
    const LabeledGraph& h = form ? form->graph : g;
    const int k = prep->dec.level;
    const std::size_t nh = h.num_vertices();

    std::optional<Candidate> best;
    auto offer = [&](std::vector<int> vs, std::vector<std::size_t> es) {
        if (!best || es.size() < best->edges.size()) best = Candidate{std::move(vs), std::move(es)};
    };
    auto done = [&] { return best && want == Want::exists; };

    // Short case: fewer than 2k edges, checked against the short-word list.
    if (k > 0 && !prep->shorts.empty()) {
        VertexSet none(nh);
        for (int len = 1; len < 2 * k && !done(); ++len) {
            if (best && best->edges.size() <= static_cast<std::size_t>(len)) break;
            bounded_simple_paths(
                h, x, len, none, Direction::forward,
                [&](const std::vector<int>& vs, const std::vector<std::size_t>& es) {
                    ++result.stats.expansions;
                    if (vs.back() != y || prep->shorts.count(word_on(h, es)) == 0) return true;
                    offer(vs, es);
                    return false;
                },
                limits_);
        }
    }

    auto middle_search = [&](const classify::Component& c, const Candidate& pre, const Candidate& suf) {
        const int a = pre.vertices.back();
        const int b = suf.vertices.front();
        const Dfa& m = c.middle;
        if (a == b) {
            if (m.is_accepting(m.initial())) {
                std::vector<int> vs = pre.vertices;
                vs.insert(vs.end(), suf.vertices.begin() + 1, suf.vertices.end());
                std::vector<std::size_t> es = pre.edges;
                es.insert(es.end(), suf.edges.begin(), suf.edges.end());
                offer(std::move(vs), std::move(es));
            }
            return;
        }
        VertexSet forbidden(nh);
        for (int v : pre.vertices) forbidden.insert(static_cast<std::size_t>(v));
        for (int v : suf.vertices) forbidden.insert(static_cast<std::size_t>(v));
        forbidden.erase(static_cast<std::size_t>(a));
        forbidden.erase(static_cast<std::size_t>(b));
        ++result.stats.expansions;
        auto walk = product_reachable(h, m, a, m.initial(), b, m.accepting(), forbidden, want);
        if (!walk) return;
        // Removing a closed sub-walk deletes letters; subword-closure keeps the word in M.
        excise_cycles(walk->vertices, walk->edges);
        std::vector<int> vs = pre.vertices;
        vs.insert(vs.end(), walk->vertices.begin() + 1, walk->vertices.end());
        vs.insert(vs.end(), suf.vertices.begin() + 1, suf.vertices.end());
        std::vector<std::size_t> es = pre.edges;
        es.insert(es.end(), walk->edges.begin(), walk->edges.end());
        es.insert(es.end(), suf.edges.begin(), suf.edges.end());
        offer(std::move(vs), std::move(es));
    };

    if (!done() && !(best && best->edges.size() <= static_cast<std::size_t>(2 * k)) && !prep->dec.components.empty()) {
        if (k == 0) {
            Candidate trivial_x{{x}, {}}, trivial_y{{y}, {}};
            middle_search(prep->dec.components.front(), trivial_x, trivial_y);
        } else {
            VertexSet avoid_y(nh), avoid_x(nh);
            avoid_y.insert(static_cast<std::size_t>(y));
            avoid_x.insert(static_cast<std::size_t>(x));
            auto pres = collect(h, x, k, avoid_y, Direction::forward, prep->prefixes, limits_);
            auto sufs = pres.empty() ? std::vector<Candidate>{}
                                     : collect(h, y, k, avoid_x, Direction::backward, prep->suffixes, limits_);
            std::vector<std::string> suf_words;
            for (const auto& s : sufs) suf_words.push_back(word_on(h, s.edges));
            std::vector<bool> used(nh, false);
            for (const auto& pre : pres) {
                const std::string p = word_on(h, pre.edges);
                for (int v : pre.vertices) used[static_cast<std::size_t>(v)] = true;
                for (std::size_t i = 0; i < sufs.size() && !done(); ++i) {
                    if (best && best->edges.size() <= static_cast<std::size_t>(2 * k)) break;
                    auto it = prep->component.find({p, suf_words[i]});
                    if (it == prep->component.end()) continue;
                    const auto& suf = sufs[i];
                    // Only the junction may be shared, and only when the middle is empty.
                    std::size_t shared = 0;
                    for (int v : suf.vertices) shared += used[static_cast<std::size_t>(v)] ? 1 : 0;
                    if (shared > 1 || (shared == 1 && pre.vertices.back() != suf.vertices.front())) continue;
                    middle_search(prep->dec.components[it->second], pre, suf);
                }
                for (int v : pre.vertices) used[static_cast<std::size_t>(v)] = false;
                if (done()) break;
            }
        }
    }

    if (!best) return result;
    return finish(std::move(best->vertices), std::move(best->edges), form ? &*form : nullptr);
}

QueryResult tractable_query(const LabeledGraph& g, const classify::Decomposition& dec, const Dfa& d, int x, int y,
                            Want want, const Limits& limits) {
    return TractableEngine(d, dec, limits).query(g, x, y, want);
}

} // namespace rspq::engines
