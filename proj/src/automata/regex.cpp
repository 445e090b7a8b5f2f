#include "rspq/automata/regex.hpp"

#include <algorithm>

#include "rspq/automata/alphabet.hpp"
#include "rspq/error.hpp"

namespace rspq::automata {

std::string normalize_alphabet(std::string_view symbols) {
    std::string out(symbols);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw InvalidArgument("alphabet must be nonempty");
    for (char c : out)
        if (!is_symbol_char(c)) throw InvalidArgument(std::string("alphabet symbol '") + c + "' not in [a-z0-9]");
    return out;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, std::string_view alphabet) : text_(text), alphabet_(alphabet) {}

    Regex parse() {
        Regex r = alternation();
        if (pos_ != text_.size()) fail("unexpected character");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        std::string found = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
        throw ParseError("regex syntax error: " + what + ", found " + found, pos_);
    }

    bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

    bool starts_atom() const {
        if (pos_ >= text_.size()) return false;
        char c = text_[pos_];
        return c == '(' || c == '~' || is_symbol_char(c);
    }

    Regex alternation() {
        Regex r = concatenation();
        while (at('|')) {
            ++pos_;
            r = Regex::alt(std::move(r), concatenation());
        }
        return r;
    }

    Regex concatenation() {
        if (!starts_atom()) fail("expected an expression");
        Regex r = postfix();
        while (starts_atom()) r = Regex::concat(std::move(r), postfix());
        return r;
    }

    Regex postfix() {
        Regex r = atom();
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '*') r = Regex::star(std::move(r));
            else if (c == '+') r = Regex::plus(std::move(r));
            else if (c == '?') r = Regex::optional(std::move(r));
            else break;
            ++pos_;
        }
        return r;
    }

    Regex atom() {
        char c = text_[pos_];
        if (c == '~') {
            ++pos_;
            return Regex::empty();
        }
        if (c == '(') {
            ++pos_;
            if (at(')')) {
                ++pos_;
                return Regex::epsilon();
            }
            Regex inner = alternation();
            if (!at(')')) fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (alphabet_.find(c) == std::string_view::npos)
            throw ParseError(std::string("symbol '") + c + "' is not in the declared alphabet", pos_);
        ++pos_;
        return Regex::sym(c);
    }

    std::string_view text_;
    std::string_view alphabet_;
    std::size_t pos_ = 0;
};

} // namespace

Regex parse_regex(std::string_view text, std::string_view alphabet) {
    return Parser(text, alphabet).parse();
}

std::string to_string(const Regex& r) {
    switch (r.kind) {
    case RegexKind::empty: return "~";
    case RegexKind::epsilon: return "()";
    case RegexKind::symbol: return std::string(1, r.symbol);
    case RegexKind::concat: return "(" + to_string(r.children[0]) + to_string(r.children[1]) + ")";
    case RegexKind::alternation: return "(" + to_string(r.children[0]) + "|" + to_string(r.children[1]) + ")";
    case RegexKind::star: return "(" + to_string(r.children[0]) + ")*";
    case RegexKind::plus: return "(" + to_string(r.children[0]) + ")+";
    case RegexKind::optional: return "(" + to_string(r.children[0]) + ")?";
    }
    return "~";
}

std::size_t size(const Regex& r) {
    std::size_t n = 1;
    for (const auto& c : r.children) n += size(c);
    return n;
}

} // namespace rspq::automata
