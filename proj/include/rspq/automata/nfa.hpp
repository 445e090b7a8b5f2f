#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rspq/automata/regex.hpp"

namespace rspq::automata {

struct NfaTransition {
    int from;
    std::optional<char> label; ///< nullopt is an epsilon move
    int to;

    friend bool operator==(const NfaTransition&, const NfaTransition&) = default;
};

/// Nondeterministic automaton with epsilon moves. Validated on construction.
class Nfa {
public:
    Nfa(std::size_t num_states, std::string alphabet, std::vector<NfaTransition> transitions,
        std::vector<int> initial, std::vector<int> accepting);

    std::size_t num_states() const noexcept { return num_states_; }
    const std::string& alphabet() const noexcept { return alphabet_; }
    const std::vector<NfaTransition>& transitions() const noexcept { return transitions_; }
    const std::vector<int>& initial() const noexcept { return initial_; }
    const std::vector<int>& accepting() const noexcept { return accepting_; }

private:
    std::size_t num_states_;
    std::string alphabet_;
    std::vector<NfaTransition> transitions_;
    std::vector<int> initial_;
    std::vector<int> accepting_;
};

/// Thompson construction: one fragment per syntax node, glued by epsilon moves.
Nfa regex_to_nfa(const Regex& r, std::string_view alphabet);

/// Adds an epsilon copy of every lettered transition, so the result accepts
/// every scattered subsequence of an accepted word.
Nfa downward_closure(const Nfa& n);

} // namespace rspq::automata
