#include "rspq/classify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "rspq/automata/automata.hpp"
#include "rspq/error.hpp"

namespace rspq::classify {

using automata::StateInclusion;

std::string to_string(Label label) {
    switch (label) {
    case Label::ac0_finite: return "AC0_FINITE";
    case Label::nl_tractable: return "NL_TRACTABLE";
    case Label::np_hard: return "NP_HARD";
    }
    return "NP_HARD";
}

std::optional<Label> parse_label(std::string_view text) {
    if (text == "AC0_FINITE") return Label::ac0_finite;
    if (text == "NL_TRACTABLE") return Label::nl_tractable;
    if (text == "NP_HARD") return Label::np_hard;
    return std::nullopt;
}

namespace {

std::size_t checked_power(std::size_t base, int exponent, std::size_t cap, const char* name) {
    std::size_t v = 1;
    for (int i = 0; i < exponent; ++i) {
        if (v > cap / std::max<std::size_t>(base, 1)) throw ResourceError(name, cap);
        v *= base;
    }
    if (v > cap) throw ResourceError(name, cap);
    return v;
}

/// All words of exactly `len` letters, lexicographic.
std::vector<std::string> words_of_length(const std::string& alphabet, int len, const Limits& limits) {
    checked_power(alphabet.size(), len, limits.max_words, "max_words");
    std::vector<std::string> out{""};
    for (int i = 0; i < len; ++i) {
        std::vector<std::string> next;
        next.reserve(out.size() * alphabet.size());
        for (const auto& w : out)
            for (char c : alphabet) next.push_back(w + c);
        out = std::move(next);
    }
    return out;
}

/// Memoised subword-closure test of middle languages M(q,T), via state
/// inclusion under acceptance T.
class MiddleClosure {
public:
    explicit MiddleClosure(const Dfa& d) : d_(d) {
        for (std::size_t q = 0; q < d.num_states(); ++q) reach_.push_back(d.reachable_from(static_cast<int>(q)));
    }

    bool closed(int q, const StateSet& targets) {
        auto key = std::make_pair(q, targets);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        auto inc = inclusions_.find(targets);
        if (inc == inclusions_.end()) inc = inclusions_.emplace(targets, StateInclusion(d_.with_accepting(targets))).first;
        bool ok = true;
        for (int r : reach_[static_cast<std::size_t>(q)].members())
            for (std::size_t a = 0; a < d_.alphabet_size() && ok; ++a) ok = inc->second.includes(d_.next(r, a), r);
        memo_.emplace(std::move(key), ok);
        return ok;
    }

    const StateInclusion& inclusion(const StateSet& targets) {
        closed(d_.initial(), targets);
        return inclusions_.at(targets);
    }

private:
    const Dfa& d_;
    std::vector<StateSet> reach_;
    std::map<StateSet, StateInclusion> inclusions_;
    std::map<std::pair<int, StateSet>, bool> memo_;
};

bool level_is_good(const Level& level, MiddleClosure& closure) {
    for (int q : level.reached.members())
        for (const auto& t : level.good_sets)
            if (!closure.closed(q, t)) return false;
    return true;
}

/// Shortest u reaching r, lexicographic among shortest, for every state reachable from q.
std::vector<std::optional<std::string>> access_words(const Dfa& d, int q) {
    std::vector<std::optional<std::string>> out(d.num_states());
    out[static_cast<std::size_t>(q)] = "";
    std::vector<int> queue{q};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int r = queue[i];
        for (std::size_t a = 0; a < d.alphabet_size(); ++a) {
            int t = d.next(r, a);
            if (!out[static_cast<std::size_t>(t)]) {
                out[static_cast<std::size_t>(t)] = *out[static_cast<std::size_t>(r)] + d.alphabet()[a];
                queue.push_back(t);
            }
        }
    }
    return out;
}

/// In a DFA whose language is not closed under single deletions: m = u·a·v
/// accepted, m' = u·v rejected, with u the access word of the first
/// offending state in breadth-first order.
std::pair<std::string, std::string> deletion_counterexample(const Dfa& m) {
    StateInclusion incl(m);
    auto access = access_words(m, m.initial());
    std::vector<int> order{m.initial()};
    std::vector<bool> seen(m.num_states(), false);
    seen[static_cast<std::size_t>(m.initial())] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
        int r = order[i];
        for (std::size_t a = 0; a < m.alphabet_size(); ++a) {
            int t = m.next(r, a);
            if (!incl.includes(t, r)) {
                auto gap = automata::combine(m.with_initial(t), m.with_initial(r), automata::SetOp::difference);
                auto v = automata::distinguishing_word(gap, automata::empty_dfa(m.alphabet()));
                const std::string& u = *access[static_cast<std::size_t>(r)];
                return {u + m.alphabet()[a] + *v, u + *v};
            }
            if (!seen[static_cast<std::size_t>(t)]) {
                seen[static_cast<std::size_t>(t)] = true;
                order.push_back(t);
            }
        }
    }
    throw std::logic_error("deletion_counterexample: language is subword-closed");
}

/// First repeated state along the run of p from q0: p[begin, end) loops.
std::optional<LoopSpan> prefix_loop(const Dfa& d, const std::string& p) {
    std::vector<int> run{d.initial()};
    for (char c : p) run.push_back(d.step(run.back(), c));
    for (std::size_t j = 1; j < run.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (run[i] == run[j]) return LoopSpan{i, j};
    return std::nullopt;
}

/// First repeated Good set along the suffixes of s: Good(s[begin..]) == Good(s[end..]).
std::optional<LoopSpan> suffix_loop(const Dfa& d, const std::string& s) {
    std::vector<StateSet> goods{d.accepting()}; // goods[i] = Good(last i letters)
    for (auto it = s.rbegin(); it != s.rend(); ++it) goods.push_back(automata::suffix_good(d, goods.back(), *it));
    const std::size_t len = s.size();
    for (std::size_t j = 1; j < goods.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (goods[i] == goods[j]) return LoopSpan{len - j, len - i};
    return std::nullopt;
}

std::string pump(const std::string& w, LoopSpan loop, int copies) {
    std::string out = w.substr(0, loop.begin);
    for (int i = 0; i < copies; ++i) out += w.substr(loop.begin, loop.end - loop.begin);
    out += w.substr(loop.end);
    return out;
}

} // namespace

LevelWalk level_sets(const Dfa& d, const Limits& limits) {
    LevelWalk walk;
    std::map<Level, std::size_t> seen;
    StateSet start(d.num_states());
    start.insert(static_cast<std::size_t>(d.initial()));
    Level current{start, {d.accepting()}};
    for (;;) {
        if (auto it = seen.find(current); it != seen.end()) {
            walk.cycle_start = it->second;
            walk.period = walk.levels.size() - it->second;
            return walk;
        }
        if (walk.levels.size() >= limits.max_levels_walked)
            throw ResourceError("max_levels_walked", limits.max_levels_walked);
        seen.emplace(current, walk.levels.size());
        walk.levels.push_back(current);

        Level next{StateSet(d.num_states()), {}};
        for (int q : current.reached.members())
            for (std::size_t a = 0; a < d.alphabet_size(); ++a) next.reached.insert(static_cast<std::size_t>(d.next(q, a)));
        std::set<StateSet> goods;
        for (const auto& t : current.good_sets)
            for (char c : d.alphabet()) goods.insert(automata::suffix_good(d, t, c));
        next.good_sets.assign(goods.begin(), goods.end());
        current = std::move(next);
    }
}

bool is_good_level(const Dfa& d, const Level& level) {
    MiddleClosure closure(d);
    return level_is_good(level, closure);
}

Decomposition build_decomposition(const Dfa& d, int level, const Limits& limits) {
    if (level < 0 || level > limits.max_level) throw ResourceError("max_level", static_cast<std::uint64_t>(limits.max_level));
    const auto words = words_of_length(d.alphabet(), level, limits);
    if (words.size() * words.size() > 100 * limits.max_words) throw ResourceError("max_words", limits.max_words);

    Decomposition dec;
    dec.level = level;
    if (level > 0) dec.short_words = automata::enumerate_words(d, static_cast<std::size_t>(2 * level - 1), limits);

    MiddleClosure closure(d);
    StateSet live = d.coreachable();
    std::vector<StateSet> goods;
    goods.reserve(words.size());
    for (const auto& s : words) goods.push_back(automata::good_set(d, s));
    std::map<std::pair<int, StateSet>, std::optional<Dfa>> middles;

    for (const auto& p : words) {
        int q = *d.run(d.initial(), p);
        if (!live.contains(static_cast<std::size_t>(q))) continue;
        for (std::size_t i = 0; i < words.size(); ++i) {
            auto key = std::make_pair(q, goods[i]);
            auto it = middles.find(key);
            if (it == middles.end()) {
                std::optional<Dfa> m;
                if (d.reachable_from(q).intersects(goods[i])) {
                    if (!closure.closed(q, goods[i]))
                        throw InvalidArgument("build_decomposition: level " + std::to_string(level) + " is not good");
                    m = automata::middle_dfa(d, q, goods[i]);
                }
                it = middles.emplace(std::move(key), std::move(m)).first;
            }
            if (!it->second) continue;
            if (dec.components.size() >= limits.max_words) throw ResourceError("max_words", limits.max_words);
            dec.components.push_back({p, *it->second, words[i]});
        }
    }
    return dec;
}

std::optional<std::string> decomposition_defect(const Dfa& d, const Decomposition& dec, const Limits& limits) {
    const auto k = static_cast<std::size_t>(std::max(dec.level, 0));
    if (dec.level < 0) return "negative level";
    auto in_alphabet = [&](const std::string& w) {
        return std::all_of(w.begin(), w.end(), [&](char c) { return d.symbol_index(c).has_value(); });
    };
    for (const auto& w : dec.short_words)
        if (w.size() >= 2 * k || !in_alphabet(w)) return "short word '" + w + "' is too long or uses a foreign letter";
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& c : dec.components) {
        if (c.prefix.size() != k || c.suffix.size() != k || !in_alphabet(c.prefix) || !in_alphabet(c.suffix))
            return "component (" + c.prefix + ", " + c.suffix + ") does not have length-" + std::to_string(k) + " ends";
        if (c.middle.alphabet() != d.alphabet()) return "middle automaton alphabet mismatch";
        if (!pairs.emplace(c.prefix, c.suffix).second)
            return "duplicate component (" + c.prefix + ", " + c.suffix + ")";
        if (!automata::is_subword_closed(c.middle, limits))
            return "middle of (" + c.prefix + ", " + c.suffix + ") is not subword-closed";
    }

    // Reconstruction NFA: state 0 branches by epsilon into every piece.
    std::vector<automata::NfaTransition> ts;
    std::vector<int> accepting;
    int next = 1;
    auto chain = [&](int from, const std::string& w) {
        for (char c : w) {
            ts.push_back({from, c, next});
            from = next++;
        }
        return from;
    };
    for (const auto& w : dec.short_words) accepting.push_back(chain(0, w));
    for (const auto& c : dec.components) {
        int end_prefix = chain(0, c.prefix);
        const int base = next;
        next += static_cast<int>(c.middle.num_states());
        ts.push_back({end_prefix, std::nullopt, base + c.middle.initial()});
        for (std::size_t q = 0; q < c.middle.num_states(); ++q)
            for (std::size_t a = 0; a < c.middle.alphabet_size(); ++a)
                ts.push_back({base + static_cast<int>(q), c.middle.alphabet()[a],
                              base + c.middle.next(static_cast<int>(q), a)});
        const int suffix_start = next++;
        for (int q : c.middle.accepting().members()) ts.push_back({base + q, std::nullopt, suffix_start});
        accepting.push_back(chain(suffix_start, c.suffix));
    }
    automata::Nfa nfa(static_cast<std::size_t>(next), d.alphabet(), std::move(ts), {0}, std::move(accepting));
    auto rebuilt = automata::minimize(automata::nfa_to_dfa(nfa, limits));
    if (auto w = automata::distinguishing_word(rebuilt, d))
        return "reconstruction differs from the language on '" + *w + "'";
    return std::nullopt;
}

HardnessWitness hardness_witness(const Dfa& d, const Limits& limits) {
    MiddleClosure closure(d);
    for (int len = 1; len <= limits.max_level; ++len) {
        const auto words = words_of_length(d.alphabet(), len, limits);
        // Lexicographically first pumpable word per state / per Good set.
        std::vector<std::pair<std::string, LoopSpan>> prefixes;
        std::set<int> prefix_states;
        for (const auto& p : words) {
            auto loop = prefix_loop(d, p);
            if (loop && prefix_states.insert(*d.run(d.initial(), p)).second) prefixes.emplace_back(p, *loop);
        }
        std::vector<std::pair<std::string, LoopSpan>> suffixes;
        std::set<StateSet> suffix_goods;
        for (const auto& s : words) {
            auto loop = suffix_loop(d, s);
            if (loop && suffix_goods.insert(automata::good_set(d, s)).second) suffixes.emplace_back(s, *loop);
        }
        for (const auto& [p, ploop] : prefixes) {
            int q = *d.run(d.initial(), p);
            for (const auto& [s, sloop] : suffixes) {
                StateSet t = automata::good_set(d, s);
                if (closure.closed(q, t)) continue;
                auto middle = automata::middle_dfa(d, q, t);
                auto [m, sub] = deletion_counterexample(middle);
                return HardnessWitness{p, m, sub, s, ploop, sloop};
            }
        }
    }
    throw ResourceError("max_level", static_cast<std::uint64_t>(limits.max_level));
}

bool check_hardness_witness(const Dfa& d, const HardnessWitness& w) {
    auto no_foreign = [&](const std::string& x) {
        return std::all_of(x.begin(), x.end(), [&](char c) { return d.symbol_index(c).has_value(); });
    };
    if (!no_foreign(w.prefix) || !no_foreign(w.suffix) || !no_foreign(w.middle) || !no_foreign(w.sub_middle))
        return false;
    // sub_middle ⊑ middle, matched greedily position by position.
    std::size_t i = 0;
    for (char c : w.middle)
        if (i < w.sub_middle.size() && w.sub_middle[i] == c) ++i;
    if (i != w.sub_middle.size()) return false;

    const auto& pl = w.prefix_loop;
    const auto& sl = w.suffix_loop;
    if (!(pl.begin < pl.end && pl.end <= w.prefix.size())) return false;
    if (!(sl.begin < sl.end && sl.end <= w.suffix.size())) return false;
    if (d.run(d.initial(), w.prefix.substr(0, pl.begin)) != d.run(d.initial(), w.prefix.substr(0, pl.end)))
        return false;
    if (automata::good_set(d, w.suffix.substr(sl.begin)) != automata::good_set(d, w.suffix.substr(sl.end)))
        return false;
    for (int copies = 0; copies <= 3; ++copies) {
        std::string p = pump(w.prefix, pl, copies);
        std::string s = pump(w.suffix, sl, copies);
        if (!d.accepts(p + w.middle + s) || d.accepts(p + w.sub_middle + s)) return false;
    }
    return true;
}

Verdict classify(const Dfa& input, LabelMode model, const Limits& limits) {
    const Dfa d = automata::minimize(input);
    Verdict v;
    v.model = model;
    v.diagnostics.subword_closed = automata::is_subword_closed(d, limits);
    v.diagnostics.aperiodic = automata::is_aperiodic(d, limits.max_monoid);
    v.diagnostics.loop_deletion = automata::satisfies_loop_deletion(d, limits.max_monoid);

    auto certified = [&](Label label, Decomposition dec) {
        if (auto defect = decomposition_defect(d, dec, limits))
            throw std::logic_error("classify produced an invalid certificate: " + *defect);
        v.label = label;
        v.certificate = std::move(dec);
        return v;
    };

    if (automata::is_finite(d)) {
        auto longest = automata::longest_word_length(d);
        int level = longest ? static_cast<int>(*longest) + 1 : 0;
        return certified(Label::ac0_finite, build_decomposition(d, level, limits));
    }

    LevelWalk walk = level_sets(d, limits);
    MiddleClosure closure(d);
    for (std::size_t k = 0; k < walk.levels.size(); ++k)
        if (level_is_good(walk.levels[k], closure))
            return certified(Label::nl_tractable, build_decomposition(d, static_cast<int>(k), limits));

    v.label = Label::np_hard;
    v.certificate = hardness_witness(d, limits);
    if (model != LabelMode::edge) v.caveats.push_back(kEdgeModelOnly);
    if (v.diagnostics.loop_deletion == Tristate::yes) v.caveats.push_back(kLoopDeletionHolds);
    return v;
}

} // namespace rspq::classify
