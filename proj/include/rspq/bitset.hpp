#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace rspq {

/// Fixed-universe bit set. Used for DFA state sets and vertex sets.
class BitSet {
public:
    BitSet() = default;
    explicit BitSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

    static BitSet full(std::size_t universe) {
        BitSet s(universe);
        for (std::size_t i = 0; i < universe; ++i) s.insert(i);
        return s;
    }

    std::size_t universe() const noexcept { return universe_; }

    void insert(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void erase(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool contains(std::size_t i) const noexcept {
        return i < universe_ && ((words_[i / 64] >> (i % 64)) & 1U) != 0;
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }
    bool empty() const noexcept {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }

    std::vector<int> members() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < universe_; ++i)
            if (contains(i)) out.push_back(static_cast<int>(i));
        return out;
    }

    BitSet& operator|=(const BitSet& other) {
        for (std::size_t i = 0; i < words_.size() && i < other.words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }
    BitSet& operator&=(const BitSet& other) {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= i < other.words_.size() ? other.words_[i] : 0;
        return *this;
    }

    bool intersects(const BitSet& other) const noexcept {
        for (std::size_t i = 0; i < words_.size() && i < other.words_.size(); ++i)
            if ((words_[i] & other.words_[i]) != 0) return true;
        return false;
    }

    std::size_t hash() const noexcept {
        std::size_t h = universe_ * 0x9E3779B97F4A7C15ULL;
        for (auto w : words_) h = (h ^ w) * 0x100000001B3ULL + (h >> 29);
        return h;
    }

    friend bool operator==(const BitSet&, const BitSet&) = default;
    friend auto operator<=>(const BitSet&, const BitSet&) = default;

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

using StateSet = BitSet;
using VertexSet = BitSet;

struct BitSetHash {
    std::size_t operator()(const BitSet& s) const noexcept { return s.hash(); }
};

} // namespace rspq
