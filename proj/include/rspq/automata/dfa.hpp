#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rspq/bitset.hpp"
#include "rspq/limits.hpp"

namespace rspq::automata {

class Nfa;

/// Complete deterministic automaton. Transitions are stored row-major:
/// `transitions[q * |alphabet| + i]` is the target of state q on alphabet[i].
class Dfa {
public:
    Dfa(std::size_t num_states, std::string alphabet, std::vector<int> transitions, int initial,
        StateSet accepting);

    std::size_t num_states() const noexcept { return num_states_; }
    const std::string& alphabet() const noexcept { return alphabet_; }
    std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
    int initial() const noexcept { return initial_; }
    const StateSet& accepting() const noexcept { return accepting_; }
    bool is_accepting(int q) const noexcept { return accepting_.contains(static_cast<std::size_t>(q)); }

    /// Non-accepting sink, if one exists.
    std::optional<int> dead_state() const noexcept { return dead_; }

    int next(int q, std::size_t symbol) const noexcept {
        return transitions_[static_cast<std::size_t>(q) * alphabet_.size() + symbol];
    }
    std::optional<std::size_t> symbol_index(char c) const noexcept;

    /// Throws InvalidArgument when `c` is outside the alphabet.
    int step(int q, char c) const;

    /// nullopt when some letter of `w` is outside the alphabet.
    std::optional<int> run(int q, std::string_view w) const noexcept;
    bool accepts(std::string_view w) const noexcept;

    Dfa with_initial(int q) const;
    Dfa with_accepting(StateSet accepting) const;

    StateSet reachable_from(int q) const;
    /// States from which some accepting state is reachable.
    StateSet coreachable() const;

    const std::vector<int>& transitions() const noexcept { return transitions_; }

private:
    std::size_t num_states_;
    std::string alphabet_;
    std::vector<int> transitions_;
    int initial_;
    StateSet accepting_;
    std::optional<int> dead_;
};

enum class SetOp { union_, intersection, difference };

/// Subset construction over reachable subsets. The empty subset, when
/// reached, becomes the dead state. Throws ResourceError past max_dfa_states.
Dfa nfa_to_dfa(const Nfa& n, const Limits& limits = {});

/// Each DFA transition becomes an NFA transition; no epsilon moves.
Nfa dfa_to_nfa(const Dfa& d);

/// Minimal complete DFA (Moore refinement over reachable states). States are
/// renumbered breadth-first from the initial state in alphabet order, so two
/// DFAs for the same language minimise to identical objects.
Dfa minimize(const Dfa& d);

/// Shortest, then lexicographically first, word in the symmetric difference.
/// Throws InvalidArgument on alphabet mismatch.
std::optional<std::string> distinguishing_word(const Dfa& a, const Dfa& b);
bool equivalent(const Dfa& a, const Dfa& b);

/// Minimal DFA of the product automaton for the requested set operation.
Dfa combine(const Dfa& a, const Dfa& b, SetOp op);

bool is_empty(const Dfa& d);
/// No cycle through a state that is both reachable and co-reachable.
bool is_finite(const Dfa& d);

/// Words of L(d) up to `max_len`, ordered by length then lexicographically.
std::vector<std::string> enumerate_words(const Dfa& d, std::size_t max_len, const Limits& limits = {});

/// Length of the longest accepted word; nullopt for an empty or infinite language.
std::optional<std::size_t> longest_word_length(const Dfa& d);

/// Language-level checks on a DFA.
bool is_subword_closed(const Dfa& d, const Limits& limits = {});
/// Second route to the same property: L is closed under deleting one letter
/// iff L(δ(r,a)) ⊆ L(r) for every reachable r and letter a.
bool is_closed_under_deletion(const Dfa& d);

/// {q : δ(q,c) ∈ targets}. Throws InvalidArgument when c is outside the alphabet.
StateSet suffix_good(const Dfa& d, const StateSet& targets, char c);
/// Iterates suffix_good over `s` from its last letter: {q : δ(q,s) ∈ F}.
StateSet good_set(const Dfa& d, std::string_view s);

/// Minimal DFA of {m : δ(q,m) ∈ targets}.
Dfa middle_dfa(const Dfa& d, int q, const StateSet& targets);

/// Minimal DFA of a single word; minimal DFA of the empty language.
Dfa word_dfa(std::string_view word, std::string_view alphabet);
Dfa empty_dfa(std::string_view alphabet);

/// L(p) ⊆ L(q) for every pair of states, with acceptance given by the DFA.
class StateInclusion {
public:
    explicit StateInclusion(const Dfa& d);
    bool includes(int p, int q) const noexcept {
        return !excluded_[static_cast<std::size_t>(p) * n_ + static_cast<std::size_t>(q)];
    }

private:
    std::size_t n_;
    std::vector<bool> excluded_;
};

/// Text form: `dfa <n> <alphabet>`, `init <q0>`, `accept <q...>`, then one
/// `trans <q> <c> <q'>` line per transition.
std::string serialize_dfa(const Dfa& d);
Dfa parse_dfa(std::string_view text);

} // namespace rspq::automata
