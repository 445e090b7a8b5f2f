#pragma once

#include "rspq/automata/alphabet.hpp"
#include "rspq/automata/dfa.hpp"
#include "rspq/automata/monoid.hpp"
#include "rspq/automata/nfa.hpp"
#include "rspq/automata/regex.hpp"

namespace rspq::automata {

/// parse_regex, Thompson NFA, subset construction, minimize.
Dfa compile_regex(std::string_view text, std::string_view alphabet, const Limits& limits = {});

} // namespace rspq::automata
