#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace rspq::automata {

/// Sorted, duplicate-free alphabet over [a-z0-9]. Throws InvalidArgument if
/// `symbols` is empty or contains a character outside that range.
std::string normalize_alphabet(std::string_view symbols);

inline bool is_symbol_char(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

inline std::optional<std::size_t> index_of(std::string_view alphabet, char c) {
    auto pos = alphabet.find(c);
    if (pos == std::string_view::npos) return std::nullopt;
    return pos;
}

} // namespace rspq::automata
