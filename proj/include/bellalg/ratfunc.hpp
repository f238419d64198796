#pragma once

#include <optional>

#include "bellalg/laurent.hpp"

namespace bellalg {

// Exact division of Laurent polynomials: n / d when d divides n, else nullopt.
// Numerator and denominator are shifted separately to ordinary polynomials;
// the trailing term of a product is the product of trailing terms, so the
// shifted quotient is ordinary too, and the true quotient is restored by the
// relative shift afterwards.
inline std::optional<LaurentPoly> divide_exact(const LaurentPoly &n, const LaurentPoly &d) {
    if (d.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
    if (n.is_zero()) return LaurentPoly::zero(n.params());
    if (d.is_unit()) return n * d.unit_inverse();
    const ParamSet &ps = n.params();
    std::size_t nv = ps.size();
    auto min_exps = [&](const LaurentPoly &p) {
        ExpVec m = p.terms().begin()->first;
        for (const auto &[e, c] : p.terms())
            for (std::size_t k = 0; k < nv; ++k) m[k] = std::min(m[k], e[k]);
        return m;
    };
    auto mono = [&](const ExpVec &e, int sign) {
        LaurentPoly m = LaurentPoly::one(ps);
        for (std::size_t k = 0; k < nv; ++k)
            if (e[k] != 0) m *= LaurentPoly::monomial(ps, ps.name(k), sign * e[k]);
        return m;
    };
    ExpVec amin = min_exps(n), bmin = min_exps(d);
    LaurentPoly rn = n * mono(amin, -1), rd = d * mono(bmin, -1);
    // rn, rd are ordinary; divide by the lex leading term.
    LaurentPoly q(ps);
    auto [de, dc] = rd.leading_term();
    while (!rn.is_zero()) {
        auto [ne, nc] = rn.leading_term();
        ExpVec qe(nv);
        for (std::size_t k = 0; k < nv; ++k) {
            qe[k] = ne[k] - de[k];
            if (qe[k] < 0) return std::nullopt;
        }
        LaurentPoly t = LaurentPoly::one(ps) * (nc / dc);
        for (std::size_t k = 0; k < nv; ++k)
            if (qe[k] != 0) t *= LaurentPoly::monomial(ps, ps.name(k), qe[k]);
        q += t;
        rn -= t * rd;
    }
    // Restore the relative shift: n/d = q * x^(amin - bmin).
    ExpVec rel(nv);
    for (std::size_t k = 0; k < nv; ++k) rel[k] = amin[k] - bmin[k];
    return q * mono(rel, 1);
}

/**
 * RatFunc: element of the fraction field of the Laurent ring. Kept lightly
 * normalized: zero has denominator 1, the denominator has unit content
 * stripped and a monic leading term, and exact quotients collapse to
 * denominator 1.
 */
class RatFunc {
  public:
    RatFunc() = default;
    explicit RatFunc(const ParamSet &ps)
        : num_(LaurentPoly::zero(ps)), den_(LaurentPoly::one(ps)) {}
    /*implicit*/ RatFunc(LaurentPoly n)
        : num_(std::move(n)), den_(LaurentPoly::one(num_.params())) {}
    RatFunc(LaurentPoly n, LaurentPoly d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        normalize();
    }

    const LaurentPoly &num() const { return num_; }
    const LaurentPoly &den() const { return den_; }
    const ParamSet &params() const { return num_.params(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }

    bool operator==(const RatFunc &o) const { return (num_ * o.den_) == (o.num_ * den_); }
    bool operator!=(const RatFunc &o) const { return !(*this == o); }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RatFunc operator+(const RatFunc &o) const {
        if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
        return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-(const RatFunc &o) const { return *this + (-o); }
    RatFunc operator*(const RatFunc &o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
    RatFunc operator/(const RatFunc &o) const {
        if (o.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return RatFunc(num_ * o.den_, den_ * o.num_);
    }
    RatFunc &operator+=(const RatFunc &o) { return *this = *this + o; }
    RatFunc &operator-=(const RatFunc &o) { return *this = *this - o; }
    RatFunc &operator*=(const RatFunc &o) { return *this = *this * o; }
    RatFunc &operator/=(const RatFunc &o) { return *this = *this / o; }

    RatFunc inv() const {
        if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
        return RatFunc(den_, num_);
    }

    // The Laurent polynomial this fraction reduces to, if any.
    std::optional<LaurentPoly> as_polynomial() const {
        if (den_.is_one()) return num_;
        return divide_exact(num_, den_);
    }

    std::string str() const {
        if (den_.is_one()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

  private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = LaurentPoly::one(num_.params());
            return;
        }
        LaurentPoly u = den_.leading_unit().unit_inverse();
        num_ *= u;
        den_ *= u;
        if (den_.is_one()) return;
        if (auto q = divide_exact(num_, den_)) {
            num_ = *q;
            den_ = LaurentPoly::one(num_.params());
        }
    }

    LaurentPoly num_, den_;
};

} // namespace bellalg
