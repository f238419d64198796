#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "bellalg/laurent.hpp"

namespace bellalg {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Recursive-descent parser for the scalar grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' int]
//   atom   := rational | 'i' | 'sqrt2' | param | '(' expr ')'
// Whitespace-insensitive; 'i' and 'sqrt2' are reserved.
class ScalarParser {
  public:
    ScalarParser(std::string src, ParamSet ps) : src_(std::move(src)), ps_(std::move(ps)) {}

    LaurentPoly parse() {
        LaurentPoly p = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input");
        return p;
    }

  private:
    LaurentPoly expr() {
        skip_ws();
        bool neg = accept('-');
        if (!neg) accept('+');
        LaurentPoly acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    LaurentPoly term() {
        LaurentPoly acc = factor();
        for (;;) {
            skip_ws();
            if (accept('*'))
                acc *= factor();
            else
                return acc;
        }
    }

    LaurentPoly factor() {
        LaurentPoly base = atom();
        skip_ws();
        if (accept('^')) {
            long e = integer_literal();
            base = base.pow(e);
        }
        return base;
    }

    LaurentPoly atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            LaurentPoly p = expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational_atom();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id = identifier();
            if (id == "i") return LaurentPoly::constant(ps_, FieldElement::i());
            if (id == "sqrt2") return LaurentPoly::constant(ps_, FieldElement::sqrt2());
            if (ps_.index_of(id) < 0) fail("unknown parameter '" + id + "'");
            return LaurentPoly::monomial(ps_, id, 1);
        }
        fail(std::string("unexpected character '") + c + "'");
        return LaurentPoly(ps_); // unreachable
    }

    LaurentPoly rational_atom() {
        Integer num = digits();
        Integer den = 1;
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '/') {
            // Only treat '/' as part of a rational literal when digits follow.
            std::size_t save = pos_;
            ++pos_;
            skip_ws();
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                den = digits();
                if (den == 0) fail("zero denominator");
            } else {
                pos_ = save;
            }
        }
        return LaurentPoly::constant(ps_, FieldElement(Rational(num, den)));
    }

    Integer digits() {
        std::string s;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            s += src_[pos_++];
        if (s.empty()) fail("expected digits");
        return Integer(s);
    }

    long integer_literal() {
        skip_ws();
        bool neg = accept('-');
        if (!neg) accept('+');
        Integer d = digits();
        long v = d.convert_to<long>();
        return neg ? -v : v;
    }

    std::string identifier() {
        std::string s;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')
                s += src_[pos_++];
            else
                break;
        }
        return s;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string &msg) const {
        throw ParseError("scalar parse error at position " + std::to_string(pos_) + ": " + msg);
    }

    std::string src_;
    ParamSet ps_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline LaurentPoly parse_scalar(const std::string &text, const ParamSet &ps) {
    return detail::ScalarParser(text, ps).parse();
}

inline FieldElement parse_field_element(const std::string &text) {
    return parse_scalar(text, ParamSet()).constant_value();
}

} // namespace bellalg
