#include "rspq/records.hpp"

#include "rspq/error.hpp"

namespace rspq::records {

namespace {

automata::Tristate tristate(const json& j) {
    const auto s = j.get<std::string>();
    if (s == "yes") return automata::Tristate::yes;
    if (s == "no") return automata::Tristate::no;
    if (s == "unknown") return automata::Tristate::unknown;
    throw InvalidArgument("bad tristate '" + s + "'");
}

json span(classify::LoopSpan s) { return json::array({s.begin, s.end}); }
classify::LoopSpan span_from(const json& j) { return {j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>()}; }

template <class F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed record: ") + e.what());
    }
}

} // namespace

json to_json(const automata::Dfa& d) {
    json rows = json::array();
    for (std::size_t q = 0; q < d.num_states(); ++q) {
        json row = json::array();
        for (std::size_t a = 0; a < d.alphabet_size(); ++a) row.push_back(d.next(static_cast<int>(q), a));
        rows.push_back(std::move(row));
    }
    return {{"alphabet", d.alphabet()},
            {"states", d.num_states()},
            {"initial", d.initial()},
            {"accepting", d.accepting().members()},
            {"transitions", std::move(rows)}};
}

automata::Dfa dfa_from_json(const json& j) {
    return guarded([&] {
        const auto alphabet = j.at("alphabet").get<std::string>();
        const auto n = j.at("states").get<std::size_t>();
        std::vector<int> table;
        const auto& rows = j.at("transitions");
        if (rows.size() != n) throw InvalidArgument("transition table has the wrong number of rows");
        for (const auto& row : rows) {
            if (row.size() != alphabet.size()) throw InvalidArgument("transition row has the wrong width");
            for (const auto& t : row) table.push_back(t.get<int>());
        }
        StateSet accepting(n);
        for (const auto& q : j.at("accepting")) {
            auto v = q.get<std::size_t>();
            if (v >= n) throw InvalidArgument("accepting state out of range");
            accepting.insert(v);
        }
        return automata::Dfa(n, alphabet, std::move(table), j.at("initial").get<int>(), std::move(accepting));
    });
}

json to_json(const classify::Decomposition& dec) {
    json comps = json::array();
    for (const auto& c : dec.components)
        comps.push_back({{"prefix", c.prefix}, {"suffix", c.suffix}, {"middle", to_json(c.middle)}});
    return {{"kind", "decomposition"}, {"level", dec.level}, {"short_words", dec.short_words}, {"components", comps}};
}

classify::Decomposition decomposition_from_json(const json& j) {
    return guarded([&] {
        classify::Decomposition dec;
        dec.level = j.at("level").get<int>();
        dec.short_words = j.at("short_words").get<std::vector<std::string>>();
        for (const auto& c : j.at("components"))
            dec.components.push_back(
                {c.at("prefix").get<std::string>(), dfa_from_json(c.at("middle")), c.at("suffix").get<std::string>()});
        return dec;
    });
}

json to_json(const classify::HardnessWitness& w) {
    return {{"kind", "hardness_witness"}, {"prefix", w.prefix},           {"middle", w.middle},
            {"sub_middle", w.sub_middle},  {"suffix", w.suffix},           {"prefix_loop", span(w.prefix_loop)},
            {"suffix_loop", span(w.suffix_loop)}};
}

classify::HardnessWitness witness_from_json(const json& j) {
    return guarded([&] {
        return classify::HardnessWitness{j.at("prefix").get<std::string>(),   j.at("middle").get<std::string>(),
                                         j.at("sub_middle").get<std::string>(), j.at("suffix").get<std::string>(),
                                         span_from(j.at("prefix_loop")),        span_from(j.at("suffix_loop"))};
    });
}

json to_json(const classify::Verdict& v) {
    json cert = v.decomposition() ? to_json(*v.decomposition()) : to_json(*v.witness());
    return {{"label", classify::to_string(v.label)},
            {"model", to_string(v.model)},
            {"caveats", v.caveats},
            {"certificate", std::move(cert)},
            {"diagnostics",
             {{"subword_closed", v.diagnostics.subword_closed},
              {"aperiodic", automata::to_string(v.diagnostics.aperiodic)},
              {"loop_deletion", automata::to_string(v.diagnostics.loop_deletion)}}}};
}

classify::Verdict verdict_from_json(const json& j) {
    return guarded([&] {
        classify::Verdict v;
        auto label = classify::parse_label(j.at("label").get<std::string>());
        auto model = parse_label_mode(j.at("model").get<std::string>());
        if (!label || !model) throw InvalidArgument("unknown label or model");
        v.label = *label;
        v.model = *model;
        v.caveats = j.at("caveats").get<std::vector<std::string>>();
        const auto& cert = j.at("certificate");
        const auto kind = cert.at("kind").get<std::string>();
        if (kind == "decomposition")
            v.certificate = decomposition_from_json(cert);
        else if (kind == "hardness_witness")
            v.certificate = witness_from_json(cert);
        else
            throw InvalidArgument("unknown certificate kind '" + kind + "'");
        const auto& d = j.at("diagnostics");
        v.diagnostics.subword_closed = d.at("subword_closed").get<bool>();
        v.diagnostics.aperiodic = tristate(d.at("aperiodic"));
        v.diagnostics.loop_deletion = tristate(d.at("loop_deletion"));
        return v;
    });
}

json to_json(const engines::QueryResult& r) {
    json j = {{"answer", r.answer ? "yes" : "no"},
              {"engine", r.engine},
              {"stats", {{"expansions", r.stats.expansions}, {"trials", r.stats.trials}}},
              {"witness", nullptr},
              {"word", nullptr},
              {"length", nullptr}};
    if (r.witness) {
        j["witness"] = {{"vertices", r.witness->vertices}, {"edges", r.witness->edges}};
        j["word"] = r.witness->word;
    }
    if (r.length) j["length"] = *r.length;
    return j;
}

engines::QueryResult query_from_json(const json& j) {
    return guarded([&] {
        engines::QueryResult r;
        const auto answer = j.at("answer").get<std::string>();
        if (answer != "yes" && answer != "no") throw InvalidArgument("answer must be yes or no");
        r.answer = answer == "yes";
        r.engine = j.at("engine").get<std::string>();
        r.stats.expansions = j.at("stats").at("expansions").get<std::uint64_t>();
        r.stats.trials = j.at("stats").at("trials").get<std::uint64_t>();
        if (!j.at("witness").is_null()) {
            graph::PathWitness w;
            w.vertices = j["witness"].at("vertices").get<std::vector<int>>();
            w.edges = j["witness"].at("edges").get<std::vector<std::size_t>>();
            w.word = j.at("word").get<std::string>();
            r.witness = std::move(w);
        }
        if (!j.at("length").is_null()) r.length = j["length"].get<std::size_t>();
        if (r.answer != r.witness.has_value()) throw InvalidArgument("answer and witness disagree");
        return r;
    });
}

json to_json(const Limits& l) {
    return {{"max_dfa_states", l.max_dfa_states}, {"max_monoid", l.max_monoid},
            {"max_expansions", l.max_expansions}, {"max_level", l.max_level},
            {"max_words", l.max_words},           {"max_enumerated", l.max_enumerated},
            {"max_word_length", l.max_word_length}, {"max_levels_walked", l.max_levels_walked},
            {"max_trials", l.max_trials}};
}

} // namespace rspq::records
