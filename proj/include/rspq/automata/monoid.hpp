#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rspq/automata/dfa.hpp"

namespace rspq::automata {

enum class Tristate { yes, no, unknown };

inline const char* to_string(Tristate t) {
    switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    case Tristate::unknown: return "unknown";
    }
    return "unknown";
}

using Transformation = std::vector<std::uint32_t>;

/// Transformations induced by nonempty words, closed under composition.
/// Composition reads left to right: (s*t)[q] = t[s[q]].
class TransitionSemigroup {
public:
    /// nullopt when the closure exceeds `cap` elements.
    static std::optional<TransitionSemigroup> build(const Dfa& d, std::size_t cap);

    const std::vector<Transformation>& elements() const noexcept { return elements_; }
    std::vector<Transformation> idempotents() const;

    static Transformation compose(const Transformation& s, const Transformation& t);

private:
    std::vector<Transformation> elements_;
};

/// `no` iff some element's power orbit has period >= 2. `unknown` past the cap.
Tristate is_aperiodic(const Dfa& d, std::size_t monoid_cap = 100'000);

/// Whether a factor flanked by idempotent loops can always be deleted:
/// for every reachable state s fixed by some idempotent, every t reachable
/// from s and every idempotent f, L(f(t)) ⊆ L(f(s)). `unknown` past the cap.
Tristate satisfies_loop_deletion(const Dfa& d, std::size_t monoid_cap = 100'000);

} // namespace rspq::automata
