#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellalg/field.hpp"

namespace bellalg {

/**
 * ParamSet: an ordered list of distinct parameter names. Exponent vectors of
 * LaurentPoly index into it, so the ordering is fixed at creation.
 */
class ParamSet {
  public:
    ParamSet() : names_(std::make_shared<std::vector<std::string>>()) {}
    explicit ParamSet(std::vector<std::string> names)
        : names_(std::make_shared<std::vector<std::string>>(std::move(names))) {
        for (std::size_t i = 0; i < names_->size(); ++i) {
            const std::string &n = (*names_)[i];
            if (n == "i" || n == "sqrt2")
                throw std::invalid_argument("ParamSet: '" + n + "' is a reserved scalar name");
            if (n.empty()) throw std::invalid_argument("ParamSet: empty parameter name");
            for (std::size_t j = i + 1; j < names_->size(); ++j)
                if ((*names_)[j] == n)
                    throw std::invalid_argument("ParamSet: duplicate parameter '" + n + "'");
        }
    }

    std::size_t size() const { return names_->size(); }
    const std::string &name(std::size_t k) const { return (*names_)[k]; }
    const std::vector<std::string> &names() const { return *names_; }

    int index_of(const std::string &name) const {
        for (std::size_t k = 0; k < names_->size(); ++k)
            if ((*names_)[k] == name) return static_cast<int>(k);
        return -1;
    }

    bool operator==(const ParamSet &o) const {
        return names_ == o.names_ || *names_ == *o.names_;
    }
    bool operator!=(const ParamSet &o) const { return !(*this == o); }

    // New ParamSet with extra names appended (existing names keep their slots).
    ParamSet extended(const std::vector<std::string> &extra) const {
        std::vector<std::string> all = *names_;
        for (const auto &n : extra)
            if (index_of(n) < 0) all.push_back(n);
        return ParamSet(std::move(all));
    }

  private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

using ExpVec = std::vector<int>;

/**
 * LaurentPoly: a multivariate Laurent polynomial over Q(i, sqrt2) in the
 * parameters of a ParamSet. Terms are kept in a map ordered lexicographically
 * on exponent vectors, with no zero coefficients stored, so the representation
 * is canonical and equality is coordinate-wise.
 */
class LaurentPoly {
  public:
    using TermMap = std::map<ExpVec, FieldElement>;

    LaurentPoly() = default;
    explicit LaurentPoly(ParamSet ps) : ps_(std::move(ps)) {}
    LaurentPoly(ParamSet ps, const FieldElement &c) : ps_(std::move(ps)) {
        if (!c.is_zero()) terms_[ExpVec(ps_.size(), 0)] = c;
    }

    static LaurentPoly constant(const ParamSet &ps, const FieldElement &c) {
        return LaurentPoly(ps, c);
    }
    static LaurentPoly zero(const ParamSet &ps) { return LaurentPoly(ps); }
    static LaurentPoly one(const ParamSet &ps) { return LaurentPoly(ps, FieldElement::one()); }

    // The monomial c * name^e.
    static LaurentPoly monomial(const ParamSet &ps, const std::string &name, int e,
                                const FieldElement &c = FieldElement::one()) {
        int k = ps.index_of(name);
        if (k < 0) throw std::invalid_argument("LaurentPoly: unknown parameter '" + name + "'");
        LaurentPoly p(ps);
        if (!c.is_zero()) {
            ExpVec ev(ps.size(), 0);
            ev[static_cast<std::size_t>(k)] = e;
            p.terms_[ev] = c;
        }
        return p;
    }

    const ParamSet &params() const { return ps_; }
    const TermMap &terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return is_constant() && constant_value().is_one(); }
    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() != 1) return false;
        const ExpVec &e = terms_.begin()->first;
        return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
    }
    FieldElement constant_value() const {
        if (terms_.empty()) return FieldElement::zero();
        if (!is_constant())
            throw std::domain_error("LaurentPoly: not a constant: " + str_raw());
        return terms_.begin()->second;
    }
    bool is_monomial() const { return terms_.size() == 1; }

    bool operator==(const LaurentPoly &o) const { return ps_ == o.ps_ && terms_ == o.terms_; }
    bool operator!=(const LaurentPoly &o) const { return !(*this == o); }
    bool operator<(const LaurentPoly &o) const { return terms_ < o.terms_; } // deterministic order

    LaurentPoly operator-() const {
        LaurentPoly r(ps_);
        for (const auto &[e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    LaurentPoly operator+(const LaurentPoly &o) const {
        check_params(o);
        LaurentPoly r = *this;
        for (const auto &[e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    LaurentPoly operator-(const LaurentPoly &o) const { return *this + (-o); }

    LaurentPoly operator*(const LaurentPoly &o) const {
        check_params(o);
        LaurentPoly r(ps_);
        for (const auto &[e1, c1] : terms_)
            for (const auto &[e2, c2] : o.terms_) {
                ExpVec e = e1;
                for (std::size_t k = 0; k < e.size(); ++k) e[k] += e2[k];
                r.add_term(e, c1 * c2);
            }
        return r;
    }

    LaurentPoly operator*(const FieldElement &c) const {
        LaurentPoly r(ps_);
        if (c.is_zero()) return r;
        for (const auto &[e, f] : terms_) r.terms_[e] = f * c;
        return r;
    }

    LaurentPoly &operator+=(const LaurentPoly &o) { return *this = *this + o; }
    LaurentPoly &operator-=(const LaurentPoly &o) { return *this = *this - o; }
    LaurentPoly &operator*=(const LaurentPoly &o) { return *this = *this * o; }

    // A unit of the Laurent ring is gamma * x^e with gamma != 0.
    bool is_unit() const { return terms_.size() == 1 && !terms_.begin()->second.is_zero(); }

    LaurentPoly unit_inverse() const {
        if (!is_unit()) throw std::domain_error("LaurentPoly: not an invertible monomial: " + str_raw());
        LaurentPoly r(ps_);
        ExpVec e = terms_.begin()->first;
        for (int &k : e) k = -k;
        r.terms_[e] = terms_.begin()->second.inv();
        return r;
    }

    LaurentPoly pow(long n) const {
        if (n < 0) return unit_inverse().pow(-n);
        LaurentPoly r = one(ps_), b = *this;
        while (n > 0) {
            if (n & 1) r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    }

    // Leading term under the map order (lexicographically largest exponent
    // vector). Always an invertible monomial when the poly is nonzero.
    std::pair<ExpVec, FieldElement> leading_term() const {
        if (terms_.empty()) throw std::domain_error("LaurentPoly: leading_term of zero");
        return *terms_.rbegin();
    }

    LaurentPoly leading_unit() const {
        auto [e, c] = leading_term();
        LaurentPoly r(ps_);
        r.terms_[e] = c;
        return r;
    }

    // Substitute parameters by polynomials: unbound parameters stay symbolic.
    // A parameter occurring with a negative exponent must be bound to an
    // invertible monomial.
    LaurentPoly substitute(const std::map<std::string, LaurentPoly> &bindings) const {
        std::vector<const LaurentPoly *> bound(ps_.size(), nullptr);
        for (const auto &[name, val] : bindings) {
            int k = ps_.index_of(name);
            if (k < 0) throw std::invalid_argument("substitute: unknown parameter '" + name + "'");
            if (val.params() != ps_)
                throw std::invalid_argument("substitute: binding for '" + name +
                                            "' uses a different parameter set");
            bound[static_cast<std::size_t>(k)] = &val;
        }
        LaurentPoly r(ps_);
        for (const auto &[e, c] : terms_) {
            ExpVec rest = e;
            LaurentPoly factor = LaurentPoly::constant(ps_, c);
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (!bound[k] || e[k] == 0) continue;
                if (e[k] < 0 && !bound[k]->is_unit())
                    throw std::domain_error("substitute: parameter '" + ps_.name(k) +
                                            "' has negative exponent but its binding is not invertible");
                factor *= bound[k]->pow(e[k]);
                rest[k] = 0;
            }
            LaurentPoly restmono(ps_);
            restmono.terms_[rest] = FieldElement::one();
            r += factor * restmono;
        }
        return r;
    }

    LaurentPoly substitute(const std::string &name, const LaurentPoly &value) const {
        return substitute(std::map<std::string, LaurentPoly>{{name, value}});
    }
    LaurentPoly substitute(const std::string &name, const FieldElement &value) const {
        return substitute(name, LaurentPoly::constant(ps_, value));
    }

    // Re-express over a superset ParamSet (names map by identity).
    LaurentPoly rebased(const ParamSet &bigger) const {
        std::vector<int> slot(ps_.size());
        for (std::size_t k = 0; k < ps_.size(); ++k) {
            int j = bigger.index_of(ps_.name(k));
            if (j < 0)
                throw std::invalid_argument("rebased: parameter '" + ps_.name(k) +
                                            "' missing from target set");
            slot[k] = j;
        }
        LaurentPoly r(bigger);
        for (const auto &[e, c] : terms_) {
            ExpVec ne(bigger.size(), 0);
            for (std::size_t k = 0; k < e.size(); ++k) ne[static_cast<std::size_t>(slot[k])] = e[k];
            r.terms_[ne] = c;
        }
        return r;
    }

    // All parameters that actually occur.
    std::vector<std::string> used_params() const {
        std::vector<bool> used(ps_.size(), false);
        for (const auto &[e, c] : terms_)
            for (std::size_t k = 0; k < e.size(); ++k)
                if (e[k] != 0) used[k] = true;
        std::vector<std::string> out;
        for (std::size_t k = 0; k < ps_.size(); ++k)
            if (used[k]) out.push_back(ps_.name(k));
        return out;
    }

    std::complex<double> eval_complex(const std::map<std::string, std::complex<double>> &vals) const {
        std::complex<double> acc = 0.0;
        for (const auto &[e, c] : terms_) {
            std::complex<double> t = c.to_complex();
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                auto it = vals.find(ps_.name(k));
                if (it == vals.end())
                    throw std::domain_error("eval_complex: unbound parameter '" + ps_.name(k) + "'");
                t *= std::pow(it->second, e[k]);
            }
            acc += t;
        }
        return acc;
    }

    std::string str() const;
    // Debug rendering that never throws.
    std::string str_raw() const;

  private:
    void check_params(const LaurentPoly &o) const {
        if (ps_ != o.ps_)
            throw std::invalid_argument("LaurentPoly: parameter-set mismatch between operands");
    }
    void add_term(const ExpVec &e, const FieldElement &c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    ParamSet ps_;
    TermMap terms_;
};

inline LaurentPoly operator*(const FieldElement &c, const LaurentPoly &p) { return p * c; }

namespace detail {

inline std::string render_monomial(const ParamSet &ps, const ExpVec &e) {
    std::string s;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (!s.empty()) s += "*";
        s += ps.name(k);
        if (e[k] != 1) s += "^" + std::to_string(e[k]);
    }
    return s;
}

} // namespace detail

namespace detail {

// True when every nonzero coordinate sits in one basis slot, so the printed
// coefficient is a single signed product like "-3/2*i*sqrt2".
inline bool coeff_is_negative_single(const FieldElement &f) {
    if (field_term_count(f) != 1) return false;
    for (int k = 0; k < 4; ++k)
        if (f.coord(k) < 0) return true;
    return false;
}

} // namespace detail

// Canonical rendering: terms in map (lex) order, coefficient first, e.g.
// "(1/2 + 1/2*i)*q^-1*x^2 + sqrt2".
inline std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto &[e, c] : terms_) {
        std::string mono = detail::render_monomial(ps_, e);
        FieldElement cc = c;
        std::string sep = first ? "" : " + ";
        if (detail::coeff_is_negative_single(cc)) {
            sep = first ? "-" : " - ";
            cc = -cc;
        }
        std::string cstr;
        if (mono.empty()) {
            // A multi-coordinate constant needs parentheses mid-sum.
            cstr = (!first && field_term_count(cc) > 1) ? "(" + cc.str() + ")" : cc.str();
        } else if (cc.is_one()) {
            cstr = mono;
        } else if (field_term_count(cc) > 1) {
            cstr = "(" + cc.str() + ")*" + mono;
        } else {
            cstr = cc.str() + "*" + mono;
        }
        out += sep + cstr;
        first = false;
    }
    return out;
}

inline std::string LaurentPoly::str_raw() const { return str(); }

} // namespace bellalg
