#include "rspq/automata/monoid.hpp"

#include <unordered_set>

namespace rspq::automata {

namespace {

struct TransformationHash {
    std::size_t operator()(const Transformation& t) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto x : t) h = (h ^ x) * 0x100000001b3ULL;
        return h;
    }
};

Transformation power(Transformation base, std::size_t e) {
    Transformation result(base.size());
    for (std::size_t q = 0; q < base.size(); ++q) result[q] = static_cast<std::uint32_t>(q);
    while (e > 0) {
        if (e & 1U) result = TransitionSemigroup::compose(result, base);
        base = TransitionSemigroup::compose(base, base);
        e >>= 1U;
    }
    return result;
}

} // namespace

Transformation TransitionSemigroup::compose(const Transformation& s, const Transformation& t) {
    Transformation out(s.size());
    for (std::size_t q = 0; q < s.size(); ++q) out[q] = t[s[q]];
    return out;
}

std::optional<TransitionSemigroup> TransitionSemigroup::build(const Dfa& d, std::size_t cap) {
    const std::size_t n = d.num_states();
    std::vector<Transformation> letters;
    for (std::size_t a = 0; a < d.alphabet_size(); ++a) {
        Transformation t(n);
        for (std::size_t q = 0; q < n; ++q) t[q] = static_cast<std::uint32_t>(d.next(static_cast<int>(q), a));
        letters.push_back(std::move(t));
    }
    TransitionSemigroup sg;
    std::unordered_set<Transformation, TransformationHash> seen;
    for (const auto& t : letters) {
        if (seen.insert(t).second) {
            if (sg.elements_.size() >= cap) return std::nullopt;
            sg.elements_.push_back(t);
        }
    }
    for (std::size_t i = 0; i < sg.elements_.size(); ++i) {
        for (const auto& a : letters) {
            Transformation t = compose(sg.elements_[i], a);
            if (seen.insert(t).second) {
                if (sg.elements_.size() >= cap) return std::nullopt;
                sg.elements_.push_back(std::move(t));
            }
        }
    }
    return sg;
}

std::vector<Transformation> TransitionSemigroup::idempotents() const {
    std::vector<Transformation> out;
    for (const auto& e : elements_)
        if (compose(e, e) == e) out.push_back(e);
    return out;
}

Tristate is_aperiodic(const Dfa& d, std::size_t monoid_cap) {
    auto sg = TransitionSemigroup::build(d, monoid_cap);
    if (!sg) return Tristate::unknown;
    // A transformation of n points has index below n, so t^n lies on its
    // power cycle; the cycle is trivial iff t^n == t^(n+1).
    const std::size_t n = d.num_states();
    for (const auto& t : sg->elements()) {
        Transformation tn = power(t, n);
        if (TransitionSemigroup::compose(tn, t) != tn) return Tristate::no;
    }
    return Tristate::yes;
}

Tristate satisfies_loop_deletion(const Dfa& d, std::size_t monoid_cap) {
    auto sg = TransitionSemigroup::build(d, monoid_cap);
    if (!sg) return Tristate::unknown;
    const auto idem = sg->idempotents();
    StateInclusion incl(d);
    StateSet reach = d.reachable_from(d.initial());
    for (int s : reach.members()) {
        bool on_loop = false;
        for (const auto& e : idem)
            if (e[static_cast<std::size_t>(s)] == static_cast<std::uint32_t>(s)) on_loop = true;
        if (!on_loop) continue;
        for (int t : d.reachable_from(s).members())
            for (const auto& f : idem)
                if (!incl.includes(static_cast<int>(f[static_cast<std::size_t>(t)]),
                                   static_cast<int>(f[static_cast<std::size_t>(s)])))
                    return Tristate::no;
    }
    return Tristate::yes;
}

} // namespace rspq::automata
