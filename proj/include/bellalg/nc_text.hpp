#pragma once

#include <cctype>

#include "bellalg/freealg.hpp"
#include "bellalg/scalar_text.hpp"

namespace bellalg {

namespace detail {

// Parser for noncommutative expressions in the word grammar, e.g.
// "a*(a*c - q^-1*d*b)". Letters a..d and a'..d' are generators; everything
// else follows the scalar grammar. '*' concatenates generator factors in
// order; scalar factors commute into the coefficient.
class NCParser {
  public:
    NCParser(std::string src, ParamSet ps) : src_(std::move(src)), ps_(std::move(ps)) {}

    NCPoly parse() {
        NCPoly p = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input");
        return p;
    }

  private:
    NCPoly expr() {
        skip_ws();
        bool neg = accept('-');
        if (!neg) accept('+');
        NCPoly acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    NCPoly term() {
        NCPoly acc = factor();
        for (;;) {
            skip_ws();
            if (accept('*'))
                acc *= factor();
            else
                return acc;
        }
    }

    NCPoly factor() {
        NCPoly base = atom();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            bool neg = accept('-');
            if (!neg) accept('+');
            long e = digits();
            if (neg) {
                // Only scalar units may carry negative powers.
                if (base.terms().size() == 1 && base.terms().begin()->first.empty() &&
                    base.terms().begin()->second.is_unit())
                    return NCPoly::term(ps_, Word{}, base.terms().begin()->second.pow(-e));
                fail("negative power of a non-invertible factor");
            }
            NCPoly r = NCPoly::one(ps_);
            for (long k = 0; k < e; ++k) r *= base;
            return r;
        }
        return base;
    }

    NCPoly atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NCPoly p = expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string lit = rational_literal();
            return NCPoly::term(ps_, Word{}, parse_scalar(lit, ps_));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id = identifier();
            if (id.size() <= 2 && id[0] >= 'a' && id[0] <= 'd' &&
                (id.size() == 1 || id[1] == '\'')) {
                Generator g(id[0], id.size() == 2);
                return NCPoly::generator(ps_, g);
            }
            if (id == "i") return NCPoly::term(ps_, Word{}, LaurentPoly::constant(ps_, FieldElement::i()));
            if (id == "sqrt2")
                return NCPoly::term(ps_, Word{}, LaurentPoly::constant(ps_, FieldElement::sqrt2()));
            if (ps_.index_of(id) < 0) fail("unknown symbol '" + id + "'");
            return NCPoly::term(ps_, Word{}, LaurentPoly::monomial(ps_, id, 1));
        }
        fail(std::string("unexpected character '") + c + "'");
        return NCPoly(ps_);
    }

    std::string rational_literal() {
        std::string s;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            s += src_[pos_++];
        std::size_t save = pos_;
        skip_ws();
        if (accept('/')) {
            skip_ws();
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                s += "/";
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    s += src_[pos_++];
            } else {
                pos_ = save;
            }
        } else {
            pos_ = save;
        }
        return s;
    }

    long digits() {
        std::string s;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            s += src_[pos_++];
        if (s.empty()) fail("expected digits");
        return std::stol(s);
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
        throw ParseError("expression parse error at position " + std::to_string(pos_) + ": " + msg);
    }

    std::string src_;
    ParamSet ps_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline NCPoly parse_ncpoly(const std::string &text, const ParamSet &ps = algebra_params()) {
    return detail::NCParser(text, ps).parse();
}

// One relation per line; blank lines and '#' comments skipped; an optional
// "label:" prefix names the relation.
inline RelationSet parse_relation_set(const std::string &text,
                                      const ParamSet &ps = algebra_params()) {
    RelationSet out(ps);
    std::size_t start = 0;
    int lineno = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string line = text.substr(start, end == std::string::npos ? std::string::npos
                                                                       : end - start);
        ++lineno;
        start = end == std::string::npos ? text.size() + 1 : end + 1;
        std::size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        bool blank = std::all_of(line.begin(), line.end(),
                                 [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (blank) continue;
        std::string label;
        std::size_t colon = line.find(':');
        if (colon != std::string::npos && line.find('(') > colon) {
            label = line.substr(0, colon);
            // trim
            while (!label.empty() && std::isspace(static_cast<unsigned char>(label.back())))
                label.pop_back();
            line = line.substr(colon + 1);
        }
        try {
            out.add(parse_ncpoly(line, ps), label);
        } catch (const ParseError &e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

} // namespace bellalg
