#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rspq::automata {

enum class RegexKind { empty, epsilon, symbol, concat, alternation, star, plus, optional };

/// Regular-expression syntax tree. Binary nodes hold two children, unary
/// nodes one, leaves none.
struct Regex {
    RegexKind kind = RegexKind::empty;
    char symbol = 0;
    std::vector<Regex> children;

    static Regex empty() { return {RegexKind::empty, 0, {}}; }
    static Regex epsilon() { return {RegexKind::epsilon, 0, {}}; }
    static Regex sym(char c) { return {RegexKind::symbol, c, {}}; }
    static Regex concat(Regex a, Regex b) { return {RegexKind::concat, 0, {std::move(a), std::move(b)}}; }
    static Regex alt(Regex a, Regex b) { return {RegexKind::alternation, 0, {std::move(a), std::move(b)}}; }
    static Regex star(Regex a) { return {RegexKind::star, 0, {std::move(a)}}; }
    static Regex plus(Regex a) { return {RegexKind::plus, 0, {std::move(a)}}; }
    static Regex optional(Regex a) { return {RegexKind::optional, 0, {std::move(a)}}; }

    friend bool operator==(const Regex&, const Regex&) = default;
};

/// Parses the surface syntax:
///
///     alt     := concat ('|' concat)*
///     concat  := postfix+
///     postfix := atom ('*' | '+' | '?')*
///     atom    := symbol | '(' ')' | '(' alt ')' | '~'
///
/// `()` is the empty word and `~` the empty language. Every symbol must be in
/// `alphabet`. Throws ParseError carrying the offending character offset.
Regex parse_regex(std::string_view text, std::string_view alphabet);

/// Prints a fully parenthesised form that parse_regex reads back.
std::string to_string(const Regex& r);

/// Node count; used by generators and tests.
std::size_t size(const Regex& r);

} // namespace rspq::automata
