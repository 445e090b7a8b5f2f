#include "rspq/automata/nfa.hpp"

#include "rspq/automata/alphabet.hpp"
#include "rspq/error.hpp"

namespace rspq::automata {

Nfa::Nfa(std::size_t num_states, std::string alphabet, std::vector<NfaTransition> transitions,
         std::vector<int> initial, std::vector<int> accepting)
    : num_states_(num_states), alphabet_(normalize_alphabet(alphabet)), transitions_(std::move(transitions)),
      initial_(std::move(initial)), accepting_(std::move(accepting)) {
    if (alphabet_ != alphabet) throw InvalidArgument("NFA alphabet must be sorted and duplicate-free");
    auto in_range = [&](int q) { return q >= 0 && static_cast<std::size_t>(q) < num_states_; };
    for (const auto& t : transitions_) {
        if (!in_range(t.from) || !in_range(t.to)) throw InvalidArgument("NFA transition endpoint out of range");
        if (t.label && alphabet_.find(*t.label) == std::string::npos)
            throw InvalidArgument("NFA transition label outside alphabet");
    }
    for (int q : initial_)
        if (!in_range(q)) throw InvalidArgument("NFA initial state out of range");
    for (int q : accepting_)
        if (!in_range(q)) throw InvalidArgument("NFA accepting state out of range");
}

namespace {

struct Fragment {
    int start;
    int accept;
};

class ThompsonBuilder {
public:
    Fragment build(const Regex& r) {
        switch (r.kind) {
        case RegexKind::empty: return {fresh(), fresh()};
        case RegexKind::epsilon: {
            Fragment f{fresh(), fresh()};
            eps(f.start, f.accept);
            return f;
        }
        case RegexKind::symbol: {
            Fragment f{fresh(), fresh()};
            transitions_.push_back({f.start, r.symbol, f.accept});
            return f;
        }
        case RegexKind::concat: {
            Fragment a = build(r.children[0]);
            Fragment b = build(r.children[1]);
            eps(a.accept, b.start);
            return {a.start, b.accept};
        }
        case RegexKind::alternation: {
            Fragment a = build(r.children[0]);
            Fragment b = build(r.children[1]);
            Fragment f{fresh(), fresh()};
            eps(f.start, a.start);
            eps(f.start, b.start);
            eps(a.accept, f.accept);
            eps(b.accept, f.accept);
            return f;
        }
        case RegexKind::star:
        case RegexKind::plus:
        case RegexKind::optional: {
            Fragment a = build(r.children[0]);
            Fragment f{fresh(), fresh()};
            eps(f.start, a.start);
            eps(a.accept, f.accept);
            if (r.kind != RegexKind::plus) eps(f.start, f.accept);
            if (r.kind != RegexKind::optional) eps(a.accept, a.start);
            return f;
        }
        }
        return {fresh(), fresh()};
    }

    int states() const { return next_; }
    std::vector<NfaTransition> take() { return std::move(transitions_); }

private:
    int fresh() { return next_++; }
    void eps(int a, int b) { transitions_.push_back({a, std::nullopt, b}); }

    int next_ = 0;
    std::vector<NfaTransition> transitions_;
};

} // namespace

Nfa regex_to_nfa(const Regex& r, std::string_view alphabet) {
    ThompsonBuilder builder;
    Fragment f = builder.build(r);
    int n = builder.states();
    return Nfa(static_cast<std::size_t>(n), normalize_alphabet(alphabet), builder.take(), {f.start}, {f.accept});
}

Nfa downward_closure(const Nfa& n) {
    std::vector<NfaTransition> ts = n.transitions();
    for (const auto& t : n.transitions())
        if (t.label) ts.push_back({t.from, std::nullopt, t.to});
    return Nfa(n.num_states(), n.alphabet(), std::move(ts), n.initial(), n.accepting());
}

} // namespace rspq::automata

#include "rspq/automata/automata.hpp"

namespace rspq::automata {

Dfa compile_regex(std::string_view text, std::string_view alphabet, const Limits& limits) {
    std::string alpha = normalize_alphabet(alphabet);
    return minimize(nfa_to_dfa(regex_to_nfa(parse_regex(text, alpha), alpha), limits));
}

} // namespace rspq::automata
