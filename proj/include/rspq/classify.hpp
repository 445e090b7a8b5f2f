#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rspq/automata/dfa.hpp"
#include "rspq/automata/monoid.hpp"
#include "rspq/label_mode.hpp"
#include "rspq/limits.hpp"

namespace rspq::classify {

using automata::Dfa;
using automata::Tristate;

enum class Label { ac0_finite, nl_tractable, np_hard };

std::string to_string(Label label);
std::optional<Label> parse_label(std::string_view text);

/// One prefix/middle/suffix slice of a language: prefix · L(middle) · suffix.
struct Component {
    std::string prefix;
    Dfa middle;
    std::string suffix;
};

/// Tractability certificate. L equals the union of all components plus the
/// short words, every prefix and suffix has length `level`, every short word
/// is shorter than 2·level and every middle is subword-closed.
struct Decomposition {
    int level = 0;
    std::vector<std::string> short_words;
    std::vector<Component> components;
};

/// Half-open position range [begin, end) of a pumpable factor.
struct LoopSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// prefix·middle·suffix ∈ L, sub_middle ⊑ middle, prefix·sub_middle·suffix ∉ L,
/// and both memberships survive pumping the marked loops of prefix and suffix
/// any number of times.
struct HardnessWitness {
    std::string prefix;
    std::string middle;
    std::string sub_middle;
    std::string suffix;
    LoopSpan prefix_loop;
    LoopSpan suffix_loop;
};

/// States reached by length-k words, and the distinct Good(s) sets of length-k suffixes.
struct Level {
    StateSet reached;
    std::vector<StateSet> good_sets; ///< sorted, duplicate-free

    friend bool operator==(const Level&, const Level&) = default;
    friend auto operator<=>(const Level&, const Level&) = default;
};

/// levels[0 .. cycle_start) is the pre-period, then exactly one full cycle of
/// `period` levels; level cycle_start + period equals level cycle_start.
struct LevelWalk {
    std::vector<Level> levels;
    std::size_t cycle_start = 0;
    std::size_t period = 0;
};

struct Diagnostics {
    bool subword_closed = false;
    Tristate aperiodic = Tristate::unknown;
    Tristate loop_deletion = Tristate::unknown;
};

/// Caveat: an NP_HARD label was derived for edge-labeled graphs only.
inline constexpr const char* kEdgeModelOnly = "edge_model_only";
/// Caveat: NP_HARD label, yet factors between idempotent loops are always
/// deletable, so the witness does not by itself establish hardness.
inline constexpr const char* kLoopDeletionHolds = "loop_deletion_holds";

struct Verdict {
    Label label = Label::np_hard;
    LabelMode model = LabelMode::edge;
    std::vector<std::string> caveats;
    std::variant<Decomposition, HardnessWitness> certificate;
    Diagnostics diagnostics;

    const Decomposition* decomposition() const { return std::get_if<Decomposition>(&certificate); }
    const HardnessWitness* witness() const { return std::get_if<HardnessWitness>(&certificate); }
    bool tractable() const { return label != Label::np_hard; }
};

LevelWalk level_sets(const Dfa& d, const Limits& limits = {});

/// Every middle language M(q,T), q ∈ reached, T ∈ good_sets, is subword-closed.
bool is_good_level(const Dfa& d, const Level& level);

/// Classifies the minimal DFA of `d`:
///   AC0_FINITE   finite language, degenerate all-short-words certificate;
///   NL_TRACTABLE smallest good level, verified Decomposition;
///   NP_HARD      no good level, HardnessWitness.
Verdict classify(const Dfa& d, LabelMode model = LabelMode::edge, const Limits& limits = {});

/// Throws InvalidArgument when some realized middle is not subword-closed.
Decomposition build_decomposition(const Dfa& d, int level, const Limits& limits = {});

/// nullopt when the certificate is sound for d, otherwise the first defect found.
std::optional<std::string> decomposition_defect(const Dfa& d, const Decomposition& dec, const Limits& limits = {});
inline bool verify_decomposition(const Dfa& d, const Decomposition& dec, const Limits& limits = {}) {
    return !decomposition_defect(d, dec, limits).has_value();
}

/// Precondition: no level of d is good. Searches k = 1, 2, ... for
/// length-k prefix/suffix words carrying a pumpable loop whose middle
/// language is not subword-closed.
HardnessWitness hardness_witness(const Dfa& d, const Limits& limits = {});

/// Re-checks every claim of the witness by DFA simulation, pumping each loop
/// zero to three times.
bool check_hardness_witness(const Dfa& d, const HardnessWitness& w);

} // namespace rspq::classify
