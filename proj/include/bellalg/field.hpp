#pragma once

#include <array>
#include <complex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace bellalg {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational &r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational &r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational &r) { return r.convert_to<double>(); }

// Exact square root of a rational, if it is a perfect square.
inline std::optional<Rational> rational_sqrt(const Rational &r) {
    if (r < 0) return std::nullopt;
    Integer n = numerator(r), d = denominator(r);
    Integer sn = boost::multiprecision::sqrt(n);
    Integer sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rational(sn, sd);
}

/**
 * FieldElement: an element of Q(i, sqrt2), stored in the unique basis
 * representation a + b*i + c*sqrt2 + d*i*sqrt2 with rational coordinates.
 */
class FieldElement {
  public:
    FieldElement() : c_{} {}
    FieldElement(Rational a, Rational b, Rational c, Rational d)
        : c_{std::move(a), std::move(b), std::move(c), std::move(d)} {}
    /*implicit*/ FieldElement(const Rational &a) : c_{a, 0, 0, 0} {}
    /*implicit*/ FieldElement(int a) : c_{Rational(a), 0, 0, 0} {}

    static FieldElement zero() { return FieldElement(); }
    static FieldElement one() { return FieldElement(1); }
    static FieldElement i() { return FieldElement(0, 1, 0, 0); }
    static FieldElement sqrt2() { return FieldElement(0, 0, 1, 0); }
    // 1/sqrt2 = sqrt2/2
    static FieldElement inv_sqrt2() { return FieldElement(0, 0, Rational(1, 2), 0); }

    const Rational &coord(int k) const { return c_[static_cast<std::size_t>(k)]; }
    const std::array<Rational, 4> &coords() const { return c_; }

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    bool is_one() const { return c_[0] == 1 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    // Purely real, i.e. in Q(sqrt2).
    bool is_real() const { return c_[1] == 0 && c_[3] == 0; }

    bool operator==(const FieldElement &o) const { return c_ == o.c_; }
    bool operator!=(const FieldElement &o) const { return !(*this == o); }
    // Total order on coordinates; used only for deterministic sorting.
    bool operator<(const FieldElement &o) const { return c_ < o.c_; }

    FieldElement operator-() const { return FieldElement(-c_[0], -c_[1], -c_[2], -c_[3]); }

    FieldElement operator+(const FieldElement &o) const {
        return FieldElement(c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2], c_[3] + o.c_[3]);
    }
    FieldElement operator-(const FieldElement &o) const { return *this + (-o); }

    FieldElement operator*(const FieldElement &o) const {
        // Basis products: i*i=-1, sqrt2*sqrt2=2, (i sqrt2)^2=-2,
        // i*sqrt2=i sqrt2, sqrt2*(i sqrt2)=2i, i*(i sqrt2)=-sqrt2.
        const Rational &a0 = c_[0], &a1 = c_[1], &a2 = c_[2], &a3 = c_[3];
        const Rational &b0 = o.c_[0], &b1 = o.c_[1], &b2 = o.c_[2], &b3 = o.c_[3];
        return FieldElement(a0 * b0 - a1 * b1 + 2 * a2 * b2 - 2 * a3 * b3,
                            a0 * b1 + a1 * b0 + 2 * a2 * b3 + 2 * a3 * b2,
                            a0 * b2 + a2 * b0 - a1 * b3 - a3 * b1,
                            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1);
    }

    FieldElement &operator+=(const FieldElement &o) { return *this = *this + o; }
    FieldElement &operator-=(const FieldElement &o) { return *this = *this - o; }
    FieldElement &operator*=(const FieldElement &o) { return *this = *this * o; }

    // Complex conjugation i -> -i.
    FieldElement conj() const { return FieldElement(c_[0], -c_[1], c_[2], -c_[3]); }
    // Galois conjugation sqrt2 -> -sqrt2.
    FieldElement conj_sqrt2() const { return FieldElement(c_[0], c_[1], -c_[2], -c_[3]); }

    // Product of all four Galois conjugates; lands in Q.
    Rational norm() const {
        FieldElement n = (*this) * conj() * conj_sqrt2() * conj().conj_sqrt2();
        return n.c_[0];
    }

    FieldElement inv() const {
        if (is_zero()) throw std::domain_error("FieldElement::inv: division by zero");
        FieldElement cofactor = conj() * conj_sqrt2() * conj().conj_sqrt2();
        Rational n = ((*this) * cofactor).c_[0];
        return FieldElement(cofactor.c_[0] / n, cofactor.c_[1] / n, cofactor.c_[2] / n,
                            cofactor.c_[3] / n);
    }

    FieldElement operator/(const FieldElement &o) const {
        if (o.is_zero())
            throw std::domain_error("FieldElement: division of " + str() + " by zero");
        return *this * o.inv();
    }

    FieldElement pow(long e) const {
        if (e < 0) return inv().pow(-e);
        FieldElement r = one(), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    std::complex<double> to_complex() const {
        const double s = 1.4142135623730950488;
        return {to_double(c_[0]) + s * to_double(c_[2]), to_double(c_[1]) + s * to_double(c_[3])};
    }
    // Image under sqrt2 -> -sqrt2, evaluated numerically. Used to pin down
    // both embeddings when reconstructing exact eigenvalues.
    std::complex<double> to_complex_conj_embedding() const { return conj_sqrt2().to_complex(); }

    std::string str() const;

  private:
    std::array<Rational, 4> c_; // a + b i + c sqrt2 + d i sqrt2
};

inline FieldElement operator*(const Rational &r, const FieldElement &f) { return FieldElement(r) * f; }

// Renders e.g. "1/2 + 1/2*i", "-sqrt2", "3*i*sqrt2", "0". One term per
// nonzero coordinate; no outer parentheses (callers add them when needed).
inline std::string FieldElement::str() const {
    static const char *unit[4] = {"", "i", "sqrt2", "i*sqrt2"};
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < 4; ++k) {
        const Rational &r = c_[static_cast<std::size_t>(k)];
        if (r == 0) continue;
        Rational mag = r < 0 ? Rational(-r) : r;
        if (first) {
            if (r < 0) os << "-";
        } else {
            os << (r < 0 ? " - " : " + ");
        }
        first = false;
        bool mag_is_one = (mag == 1);
        if (k == 0 || !mag_is_one) {
            os << mag.str();
            if (k != 0) os << "*";
        }
        if (k != 0) os << unit[k];
    }
    if (first) os << "0";
    return os.str();
}

// Number of printed summands; a multi-term coefficient needs parentheses.
inline int field_term_count(const FieldElement &f) {
    int n = 0;
    for (int k = 0; k < 4; ++k)
        if (f.coord(k) != 0) ++n;
    return n;
}

namespace detail {

// sqrt inside Q(sqrt2): solve (u + v sqrt2)^2 = a + b sqrt2.
inline std::optional<std::pair<Rational, Rational>> sqrt_in_qsqrt2(const Rational &a,
                                                                   const Rational &b) {
    if (b == 0) {
        if (auto u = rational_sqrt(a)) return std::make_pair(*u, Rational(0));
        if (auto v = rational_sqrt(a / 2)) return std::make_pair(Rational(0), *v);
        return std::nullopt;
    }
    // u^2 + 2 v^2 = a and 2 u v = b  =>  u^2 = (a +- sqrt(a^2 - 2 b^2)) / 2.
    auto disc = rational_sqrt(a * a - 2 * b * b);
    if (!disc) return std::nullopt;
    for (int sign = 0; sign < 2; ++sign) {
        Rational u2 = (a + (sign == 0 ? *disc : -*disc)) / 2;
        if (auto u = rational_sqrt(u2)) {
            if (*u == 0) continue;
            Rational v = b / (2 * *u);
            if (*u * *u + 2 * v * v == a && 2 * *u * v == b) return std::make_pair(*u, v);
        }
    }
    return std::nullopt;
}

} // namespace detail

// Exact square root in Q(i, sqrt2), when one exists.
inline std::optional<FieldElement> field_sqrt(const FieldElement &x) {
    if (x.is_zero()) return FieldElement::zero();
    // Split x = re + im*i with re, im in Q(sqrt2); seek s = alpha + beta*i.
    const Rational re_a = x.coord(0), re_b = x.coord(2);
    const Rational im_a = x.coord(1), im_b = x.coord(3);
    const bool im_zero = (im_a == 0 && im_b == 0);
    if (im_zero) {
        if (auto al = detail::sqrt_in_qsqrt2(re_a, re_b))
            return FieldElement(al->first, 0, al->second, 0);
        if (auto be = detail::sqrt_in_qsqrt2(-re_a, -re_b))
            return FieldElement(0, be->first, 0, be->second);
        return std::nullopt;
    }
    // alpha^2 - beta^2 = re, 2 alpha beta = im  =>
    // alpha^2 = (re + sqrt(re^2 + im^2)) / 2 with everything in Q(sqrt2).
    // mag2 = re^2 + im^2 computed componentwise in Q(sqrt2).
    Rational mag_a = re_a * re_a + 2 * re_b * re_b + im_a * im_a + 2 * im_b * im_b;
    Rational mag_b = 2 * re_a * re_b + 2 * im_a * im_b;
    auto mag = detail::sqrt_in_qsqrt2(mag_a, mag_b);
    if (!mag) return std::nullopt;
    for (int sign = 0; sign < 2; ++sign) {
        Rational ra = sign == 0 ? mag->first : -mag->first;
        Rational rb = sign == 0 ? mag->second : -mag->second;
        Rational al2_a = (re_a + ra) / 2, al2_b = (re_b + rb) / 2;
        auto alpha = detail::sqrt_in_qsqrt2(al2_a, al2_b);
        if (!alpha) continue;
        FieldElement al(alpha->first, 0, alpha->second, 0);
        if (al.is_zero()) continue;
        FieldElement im(im_a, 0, im_b, 0);
        FieldElement beta = im / (FieldElement(2) * al); // in Q(sqrt2)
        FieldElement s = al + FieldElement::i() * beta;
        if (s * s == x) return s;
    }
    return std::nullopt;
}

} // namespace bellalg
