#include "rspq/automata/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "rspq/automata/alphabet.hpp"
#include "rspq/automata/nfa.hpp"
#include "rspq/error.hpp"

namespace rspq::automata {

Dfa::Dfa(std::size_t num_states, std::string alphabet, std::vector<int> transitions, int initial,
         StateSet accepting)
    : num_states_(num_states), alphabet_(std::move(alphabet)), transitions_(std::move(transitions)),
      initial_(initial), accepting_(std::move(accepting)) {
    if (normalize_alphabet(alphabet_) != alphabet_)
        throw InvalidArgument("DFA alphabet must be sorted and duplicate-free");
    if (num_states_ == 0) throw InvalidArgument("DFA needs at least one state");
    if (transitions_.size() != num_states_ * alphabet_.size())
        throw InvalidArgument("DFA transition table is not total");
    for (int t : transitions_)
        if (t < 0 || static_cast<std::size_t>(t) >= num_states_) throw InvalidArgument("DFA transition out of range");
    if (initial_ < 0 || static_cast<std::size_t>(initial_) >= num_states_)
        throw InvalidArgument("DFA initial state out of range");
    if (accepting_.universe() != num_states_) throw InvalidArgument("DFA accepting set has the wrong universe");
    for (std::size_t q = 0; q < num_states_ && !dead_; ++q) {
        if (accepting_.contains(q)) continue;
        bool sink = true;
        for (std::size_t a = 0; a < alphabet_.size() && sink; ++a)
            sink = transitions_[q * alphabet_.size() + a] == static_cast<int>(q);
        if (sink) dead_ = static_cast<int>(q);
    }
}

std::optional<std::size_t> Dfa::symbol_index(char c) const noexcept { return index_of(alphabet_, c); }

int Dfa::step(int q, char c) const {
    auto i = symbol_index(c);
    if (!i) throw InvalidArgument(std::string("character '") + c + "' outside the DFA alphabet");
    return next(q, *i);
}

std::optional<int> Dfa::run(int q, std::string_view w) const noexcept {
    for (char c : w) {
        auto i = symbol_index(c);
        if (!i) return std::nullopt;
        q = next(q, *i);
    }
    return q;
}

bool Dfa::accepts(std::string_view w) const noexcept {
    auto q = run(initial_, w);
    return q && is_accepting(*q);
}

Dfa Dfa::with_initial(int q) const { return Dfa(num_states_, alphabet_, transitions_, q, accepting_); }

Dfa Dfa::with_accepting(StateSet accepting) const {
    return Dfa(num_states_, alphabet_, transitions_, initial_, std::move(accepting));
}

StateSet Dfa::reachable_from(int q) const {
    StateSet seen(num_states_);
    std::vector<int> stack{q};
    seen.insert(static_cast<std::size_t>(q));
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (std::size_t a = 0; a < alphabet_.size(); ++a) {
            int t = next(s, a);
            if (!seen.contains(static_cast<std::size_t>(t))) {
                seen.insert(static_cast<std::size_t>(t));
                stack.push_back(t);
            }
        }
    }
    return seen;
}

StateSet Dfa::coreachable() const {
    std::vector<std::vector<int>> pred(num_states_);
    for (std::size_t q = 0; q < num_states_; ++q)
        for (std::size_t a = 0; a < alphabet_.size(); ++a)
            pred[static_cast<std::size_t>(next(static_cast<int>(q), a))].push_back(static_cast<int>(q));
    StateSet seen = accepting_;
    std::vector<int> stack = accepting_.members();
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int p : pred[static_cast<std::size_t>(s)]) {
            if (!seen.contains(static_cast<std::size_t>(p))) {
                seen.insert(static_cast<std::size_t>(p));
                stack.push_back(p);
            }
        }
    }
    return seen;
}

// ---------------------------------------------------------------------------
// Determinization

Dfa nfa_to_dfa(const Nfa& n, const Limits& limits) {
    const std::size_t ns = n.num_states();
    const std::string& alpha = n.alphabet();
    const std::size_t k = alpha.size();

    std::vector<std::vector<int>> eps(ns);
    std::vector<std::vector<std::vector<int>>> moves(k, std::vector<std::vector<int>>(ns));
    for (const auto& t : n.transitions()) {
        if (!t.label) eps[static_cast<std::size_t>(t.from)].push_back(t.to);
        else moves[*index_of(alpha, *t.label)][static_cast<std::size_t>(t.from)].push_back(t.to);
    }

    auto close = [&](StateSet s) {
        std::vector<int> stack = s.members();
        while (!stack.empty()) {
            int q = stack.back();
            stack.pop_back();
            for (int r : eps[static_cast<std::size_t>(q)]) {
                if (!s.contains(static_cast<std::size_t>(r))) {
                    s.insert(static_cast<std::size_t>(r));
                    stack.push_back(r);
                }
            }
        }
        return s;
    };

    StateSet final_states(ns);
    for (int q : n.accepting()) final_states.insert(static_cast<std::size_t>(q));

    StateSet start(ns);
    for (int q : n.initial()) start.insert(static_cast<std::size_t>(q));
    start = close(std::move(start));

    std::unordered_map<StateSet, int, BitSetHash> index;
    std::vector<StateSet> subsets;
    std::vector<int> table;
    auto intern = [&](StateSet s) {
        auto [it, inserted] = index.emplace(s, static_cast<int>(subsets.size()));
        if (inserted) {
            if (subsets.size() >= limits.max_dfa_states) throw ResourceError("dfa_states", limits.max_dfa_states);
            subsets.push_back(std::move(s));
        }
        return it->second;
    };
    intern(start);

    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            StateSet target(ns);
            for (int q : subsets[i].members())
                for (int r : moves[a][static_cast<std::size_t>(q)]) target.insert(static_cast<std::size_t>(r));
            table.push_back(intern(close(std::move(target))));
        }
    }

    StateSet accepting(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i)
        if (subsets[i].intersects(final_states)) accepting.insert(i);
    return Dfa(subsets.size(), alpha, std::move(table), 0, std::move(accepting));
}

Nfa dfa_to_nfa(const Dfa& d) {
    std::vector<NfaTransition> ts;
    ts.reserve(d.num_states() * d.alphabet_size());
    for (std::size_t q = 0; q < d.num_states(); ++q)
        for (std::size_t a = 0; a < d.alphabet_size(); ++a)
            ts.push_back({static_cast<int>(q), d.alphabet()[a], d.next(static_cast<int>(q), a)});
    std::vector<int> accepting = d.accepting().members();
    return Nfa(d.num_states(), d.alphabet(), std::move(ts), {d.initial()}, std::move(accepting));
}

// ---------------------------------------------------------------------------
// Minimization

Dfa minimize(const Dfa& d) {
    const std::size_t k = d.alphabet_size();
    std::vector<int> order; // reachable states, BFS order
    std::vector<int> pos(d.num_states(), -1);
    order.push_back(d.initial());
    pos[static_cast<std::size_t>(d.initial())] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            int t = d.next(order[i], a);
            if (pos[static_cast<std::size_t>(t)] < 0) {
                pos[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
                order.push_back(t);
            }
        }
    }
    const std::size_t n = order.size();

    std::vector<int> cls(n);
    for (std::size_t i = 0; i < n; ++i) cls[i] = d.is_accepting(order[i]) ? 1 : 0;
    std::size_t classes = 0;
    for (;;) {
        std::map<std::vector<int>, int> ids;
        std::vector<int> next_cls(n);
        std::vector<int> sig(k + 1);
        for (std::size_t i = 0; i < n; ++i) {
            sig[0] = cls[i];
            for (std::size_t a = 0; a < k; ++a)
                sig[a + 1] = cls[static_cast<std::size_t>(pos[static_cast<std::size_t>(d.next(order[i], a))])];
            auto [it, inserted] = ids.emplace(sig, static_cast<int>(ids.size()));
            next_cls[i] = it->second;
        }
        cls = std::move(next_cls);
        if (ids.size() == classes) break;
        classes = ids.size();
    }

    // Canonical numbering: BFS over classes from the initial class.
    std::vector<int> rep(classes, -1);
    for (std::size_t i = 0; i < n; ++i)
        if (rep[static_cast<std::size_t>(cls[i])] < 0) rep[static_cast<std::size_t>(cls[i])] = static_cast<int>(i);
    std::vector<int> canon(classes, -1);
    std::vector<int> queue{cls[0]};
    canon[static_cast<std::size_t>(cls[0])] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int state = order[static_cast<std::size_t>(rep[static_cast<std::size_t>(queue[i])])];
        for (std::size_t a = 0; a < k; ++a) {
            int c = cls[static_cast<std::size_t>(pos[static_cast<std::size_t>(d.next(state, a))])];
            if (canon[static_cast<std::size_t>(c)] < 0) {
                canon[static_cast<std::size_t>(c)] = static_cast<int>(queue.size());
                queue.push_back(c);
            }
        }
    }

    std::vector<int> table(classes * k);
    StateSet accepting(classes);
    for (std::size_t i = 0; i < classes; ++i) {
        int state = order[static_cast<std::size_t>(rep[static_cast<std::size_t>(queue[i])])];
        if (d.is_accepting(state)) accepting.insert(i);
        for (std::size_t a = 0; a < k; ++a) {
            int c = cls[static_cast<std::size_t>(pos[static_cast<std::size_t>(d.next(state, a))])];
            table[i * k + a] = canon[static_cast<std::size_t>(c)];
        }
    }
    return Dfa(classes, d.alphabet(), std::move(table), 0, std::move(accepting));
}

// ---------------------------------------------------------------------------
// Products

namespace {

void require_same_alphabet(const Dfa& a, const Dfa& b) {
    if (a.alphabet() != b.alphabet())
        throw InvalidArgument("alphabet mismatch: '" + a.alphabet() + "' vs '" + b.alphabet() + "'");
}

} // namespace

std::optional<std::string> distinguishing_word(const Dfa& a, const Dfa& b) {
    require_same_alphabet(a, b);
    const std::size_t k = a.alphabet_size();
    const std::size_t nb = b.num_states();
    auto key = [nb](int p, int q) {
        return static_cast<std::uint64_t>(p) * nb + static_cast<std::uint64_t>(q);
    };
    struct Entry {
        int p, q;
        std::int64_t parent;
        char letter;
    };
    std::vector<Entry> nodes{{a.initial(), b.initial(), -1, 0}};
    std::unordered_set<std::uint64_t> seen{key(a.initial(), b.initial())};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto [p, q, parent, letter] = nodes[i];
        if (a.is_accepting(p) != b.is_accepting(q)) {
            std::string w;
            for (std::int64_t j = static_cast<std::int64_t>(i); nodes[static_cast<std::size_t>(j)].parent >= 0;
                 j = nodes[static_cast<std::size_t>(j)].parent)
                w.push_back(nodes[static_cast<std::size_t>(j)].letter);
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (std::size_t c = 0; c < k; ++c) {
            int p2 = a.next(p, c), q2 = b.next(q, c);
            if (seen.insert(key(p2, q2)).second)
                nodes.push_back({p2, q2, static_cast<std::int64_t>(i), a.alphabet()[c]});
        }
    }
    return std::nullopt;
}

bool equivalent(const Dfa& a, const Dfa& b) { return !distinguishing_word(a, b).has_value(); }

Dfa combine(const Dfa& a, const Dfa& b, SetOp op) {
    require_same_alphabet(a, b);
    const std::size_t k = a.alphabet_size();
    const std::size_t nb = b.num_states();
    std::unordered_map<std::uint64_t, int> index;
    std::vector<std::pair<int, int>> pairs;
    auto intern = [&](int p, int q) {
        auto key = static_cast<std::uint64_t>(p) * nb + static_cast<std::uint64_t>(q);
        auto [it, inserted] = index.emplace(key, static_cast<int>(pairs.size()));
        if (inserted) pairs.emplace_back(p, q);
        return it->second;
    };
    intern(a.initial(), b.initial());
    std::vector<int> table;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [p, q] = pairs[i];
        for (std::size_t c = 0; c < k; ++c) table.push_back(intern(a.next(p, c), b.next(q, c)));
    }
    StateSet accepting(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        bool x = a.is_accepting(pairs[i].first), y = b.is_accepting(pairs[i].second);
        bool acc = op == SetOp::union_ ? (x || y) : op == SetOp::intersection ? (x && y) : (x && !y);
        if (acc) accepting.insert(i);
    }
    return minimize(Dfa(pairs.size(), a.alphabet(), std::move(table), 0, std::move(accepting)));
}

// ---------------------------------------------------------------------------
// Language queries

bool is_empty(const Dfa& d) { return !d.reachable_from(d.initial()).intersects(d.accepting()); }

namespace {

/// Reachable and co-reachable states.
StateSet useful_states(const Dfa& d) {
    StateSet useful = d.reachable_from(d.initial());
    useful &= d.coreachable();
    return useful;
}

} // namespace

bool is_finite(const Dfa& d) {
    StateSet useful = useful_states(d);
    // Iterative three-colour DFS restricted to useful states.
    std::vector<int> colour(d.num_states(), 0);
    for (int root : useful.members()) {
        if (colour[static_cast<std::size_t>(root)] != 0) continue;
        std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
        colour[static_cast<std::size_t>(root)] = 1;
        while (!stack.empty()) {
            auto& [q, a] = stack.back();
            if (a == d.alphabet_size()) {
                colour[static_cast<std::size_t>(q)] = 2;
                stack.pop_back();
                continue;
            }
            int t = d.next(q, a++);
            if (!useful.contains(static_cast<std::size_t>(t))) continue;
            if (colour[static_cast<std::size_t>(t)] == 1) return false;
            if (colour[static_cast<std::size_t>(t)] == 0) {
                colour[static_cast<std::size_t>(t)] = 1;
                stack.emplace_back(t, 0);
            }
        }
    }
    return true;
}

std::optional<std::size_t> longest_word_length(const Dfa& d) {
    if (is_empty(d) || !is_finite(d)) return std::nullopt;
    StateSet useful = useful_states(d);
    // The useful part is a DAG: longest path by memoised DFS.
    std::vector<long> memo(d.num_states(), -2);
    auto longest = [&](auto&& self, int q) -> long {
        auto& m = memo[static_cast<std::size_t>(q)];
        if (m != -2) return m;
        long best = d.is_accepting(q) ? 0 : -1;
        for (std::size_t a = 0; a < d.alphabet_size(); ++a) {
            int t = d.next(q, a);
            if (!useful.contains(static_cast<std::size_t>(t))) continue;
            long sub = self(self, t);
            if (sub >= 0) best = std::max(best, sub + 1);
        }
        return m = best;
    };
    return static_cast<std::size_t>(longest(longest, d.initial()));
}

std::vector<std::string> enumerate_words(const Dfa& d, std::size_t max_len, const Limits& limits) {
    if (max_len > limits.max_word_length) throw ResourceError("max_word_length", limits.max_word_length);
    StateSet live = d.coreachable();
    std::vector<std::string> out;
    if (!live.contains(static_cast<std::size_t>(d.initial()))) return out;
    std::vector<std::pair<std::string, int>> frontier{{"", d.initial()}};
    for (std::size_t len = 0;; ++len) {
        for (const auto& [w, q] : frontier) {
            if (d.is_accepting(q)) {
                if (out.size() >= limits.max_enumerated) throw ResourceError("max_enumerated", limits.max_enumerated);
                out.push_back(w);
            }
        }
        if (len == max_len) break;
        std::vector<std::pair<std::string, int>> next;
        for (const auto& [w, q] : frontier) {
            for (std::size_t a = 0; a < d.alphabet_size(); ++a) {
                int t = d.next(q, a);
                if (!live.contains(static_cast<std::size_t>(t))) continue;
                if (next.size() >= limits.max_enumerated) throw ResourceError("max_enumerated", limits.max_enumerated);
                next.emplace_back(w + d.alphabet()[a], t);
            }
        }
        if (next.empty()) break;
        frontier = std::move(next);
    }
    return out;
}

bool is_subword_closed(const Dfa& d, const Limits& limits) {
    Dfa closure = minimize(nfa_to_dfa(downward_closure(dfa_to_nfa(d)), limits));
    return equivalent(d, closure);
}

StateInclusion::StateInclusion(const Dfa& d) : n_(d.num_states()), excluded_(n_ * n_, false) {
    const std::size_t k = d.alphabet_size();
    std::vector<std::vector<std::vector<int>>> pred(k, std::vector<std::vector<int>>(n_));
    for (std::size_t q = 0; q < n_; ++q)
        for (std::size_t a = 0; a < k; ++a)
            pred[a][static_cast<std::size_t>(d.next(static_cast<int>(q), a))].push_back(static_cast<int>(q));
    std::vector<std::pair<int, int>> work;
    for (std::size_t p = 0; p < n_; ++p)
        for (std::size_t q = 0; q < n_; ++q)
            if (d.is_accepting(static_cast<int>(p)) && !d.is_accepting(static_cast<int>(q))) {
                excluded_[p * n_ + q] = true;
                work.emplace_back(static_cast<int>(p), static_cast<int>(q));
            }
    while (!work.empty()) {
        auto [p, q] = work.back();
        work.pop_back();
        for (std::size_t a = 0; a < k; ++a)
            for (int p2 : pred[a][static_cast<std::size_t>(p)])
                for (int q2 : pred[a][static_cast<std::size_t>(q)]) {
                    auto idx = static_cast<std::size_t>(p2) * n_ + static_cast<std::size_t>(q2);
                    if (!excluded_[idx]) {
                        excluded_[idx] = true;
                        work.emplace_back(p2, q2);
                    }
                }
    }
}

bool is_closed_under_deletion(const Dfa& d) {
    StateInclusion incl(d);
    for (int r : d.reachable_from(d.initial()).members())
        for (std::size_t a = 0; a < d.alphabet_size(); ++a)
            if (!incl.includes(d.next(r, a), r)) return false;
    return true;
}

StateSet suffix_good(const Dfa& d, const StateSet& targets, char c) {
    auto a = d.symbol_index(c);
    if (!a) throw InvalidArgument(std::string("character '") + c + "' outside the DFA alphabet");
    if (targets.universe() != d.num_states()) throw InvalidArgument("state set universe does not match the DFA");
    StateSet out(d.num_states());
    for (std::size_t q = 0; q < d.num_states(); ++q)
        if (targets.contains(static_cast<std::size_t>(d.next(static_cast<int>(q), *a)))) out.insert(q);
    return out;
}

StateSet good_set(const Dfa& d, std::string_view s) {
    StateSet t = d.accepting();
    for (auto it = s.rbegin(); it != s.rend(); ++it) t = suffix_good(d, t, *it);
    return t;
}

Dfa middle_dfa(const Dfa& d, int q, const StateSet& targets) {
    if (q < 0 || static_cast<std::size_t>(q) >= d.num_states()) throw InvalidArgument("middle_dfa: state out of range");
    return minimize(Dfa(d.num_states(), d.alphabet(), d.transitions(), q, targets));
}

Dfa word_dfa(std::string_view word, std::string_view alphabet) {
    std::string alpha = normalize_alphabet(alphabet);
    const std::size_t n = word.size() + 2; // chain plus dead state
    const int dead = static_cast<int>(n - 1);
    std::vector<int> table(n * alpha.size(), dead);
    for (std::size_t i = 0; i < word.size(); ++i) {
        auto a = index_of(alpha, word[i]);
        if (!a) throw InvalidArgument(std::string("character '") + word[i] + "' outside the alphabet");
        table[i * alpha.size() + *a] = static_cast<int>(i + 1);
    }
    StateSet accepting(n);
    accepting.insert(word.size());
    return minimize(Dfa(n, alpha, std::move(table), 0, std::move(accepting)));
}

Dfa empty_dfa(std::string_view alphabet) {
    std::string alpha = normalize_alphabet(alphabet);
    return Dfa(1, alpha, std::vector<int>(alpha.size(), 0), 0, StateSet(1));
}

// ---------------------------------------------------------------------------
// Text form

std::string serialize_dfa(const Dfa& d) {
    std::ostringstream out;
    out << "dfa " << d.num_states() << ' ' << d.alphabet() << '\n';
    out << "init " << d.initial() << '\n';
    out << "accept";
    for (int q : d.accepting().members()) out << ' ' << q;
    out << '\n';
    for (std::size_t q = 0; q < d.num_states(); ++q)
        for (std::size_t a = 0; a < d.alphabet_size(); ++a)
            out << "trans " << q << ' ' << d.alphabet()[a] << ' ' << d.next(static_cast<int>(q), a) << '\n';
    return out.str();
}

Dfa parse_dfa(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> n;
    std::string alphabet;
    std::optional<int> initial;
    std::optional<StateSet> accepting;
    std::vector<int> table;

    auto parse_state = [&](std::istringstream& fields) {
        long long q = -1;
        if (!(fields >> q) || q < 0 || !n || static_cast<std::size_t>(q) >= *n)
            throw ParseError("DFA: bad state number", line_no);
        return static_cast<int>(q);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string keyword;
        if (!(fields >> keyword)) continue;
        if (keyword == "dfa") {
            long long count = 0;
            if (n || !(fields >> count >> alphabet) || count <= 0) throw ParseError("DFA: bad header", line_no);
            n = static_cast<std::size_t>(count);
            try {
                if (normalize_alphabet(alphabet) != alphabet) throw InvalidArgument("unsorted");
            } catch (const InvalidArgument&) {
                throw ParseError("DFA: alphabet must be sorted, duplicate-free, in [a-z0-9]", line_no);
            }
            table.assign(*n * alphabet.size(), -1);
        } else if (!n) {
            throw ParseError("DFA: missing 'dfa' header", line_no);
        } else if (keyword == "init") {
            if (initial) throw ParseError("DFA: duplicate init line", line_no);
            initial = parse_state(fields);
        } else if (keyword == "accept") {
            if (accepting) throw ParseError("DFA: duplicate accept line", line_no);
            accepting = StateSet(*n);
            std::string tok;
            while (fields >> tok) {
                std::istringstream one(tok);
                accepting->insert(static_cast<std::size_t>(parse_state(one)));
            }
        } else if (keyword == "trans") {
            int from = parse_state(fields);
            char c = 0;
            if (!(fields >> c)) throw ParseError("DFA: missing transition label", line_no);
            auto a = index_of(alphabet, c);
            if (!a) throw ParseError(std::string("DFA: label '") + c + "' outside alphabet", line_no);
            int to = parse_state(fields);
            auto& slot = table[static_cast<std::size_t>(from) * alphabet.size() + *a];
            if (slot >= 0) throw ParseError("DFA: duplicate transition", line_no);
            slot = to;
        } else {
            throw ParseError("DFA: unknown keyword '" + keyword + "'", line_no);
        }
        std::string extra;
        if (fields >> extra) throw ParseError("DFA: trailing fields", line_no);
    }
    if (!n || !initial || !accepting) throw ParseError("DFA: missing header, init or accept line", line_no);
    if (std::find(table.begin(), table.end(), -1) != table.end())
        throw ParseError("DFA: transition function is not total", line_no);
    return Dfa(*n, alphabet, std::move(table), *initial, std::move(*accepting));
}

} // namespace rspq::automata
