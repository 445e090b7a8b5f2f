#pragma once

#include <cstddef>
#include <cstdint>

namespace rspq {

/// Resource caps shared by every module. Exceeding one raises ResourceError
/// (or yields an `unknown` diagnostic), never a silently truncated answer.
struct Limits {
    std::size_t max_dfa_states = 100'000;      ///< subset-construction states
    std::size_t max_monoid = 100'000;          ///< transition monoid elements
    std::uint64_t max_expansions = 10'000'000; ///< brute-force search nodes
    int max_level = 12;                        ///< shortcut level k / path prefix length
    std::size_t max_words = 100'000;           ///< |alphabet|^k enumerations
    std::size_t max_enumerated = 1'000'000;    ///< words produced by enumerate_words
    std::size_t max_word_length = 64;          ///< enumerate_words length bound
    std::size_t max_levels_walked = 1'000'000; ///< level-set walk iterations
    std::uint64_t max_trials = 10'000'000;     ///< color-coding trials
};

} // namespace rspq
