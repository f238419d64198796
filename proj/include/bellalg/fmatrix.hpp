#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "bellalg/field.hpp"

namespace bellalg {

/** Dense vector over Q(i, sqrt2). */
using FVector = std::vector<FieldElement>;

inline bool fvec_is_zero(const FVector &v) {
    return std::all_of(v.begin(), v.end(), [](const FieldElement &x) { return x.is_zero(); });
}

inline FVector fvec_add(const FVector &a, const FVector &b) {
    FVector r = a;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] += b[k];
    return r;
}
inline FVector fvec_sub(const FVector &a, const FVector &b) {
    FVector r = a;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
    return r;
}
inline FVector fvec_scale(const FVector &a, const FieldElement &s) {
    FVector r = a;
    for (auto &x : r) x *= s;
    return r;
}

/** Dense square-or-rectangular matrix over Q(i, sqrt2), row-major. */
class FMatrix {
  public:
    FMatrix() = default;
    FMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    FMatrix(std::size_t rows, std::size_t cols, std::vector<FieldElement> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != rows_ * cols_) throw std::invalid_argument("FMatrix: bad entry count");
    }

    static FMatrix identity(std::size_t n) {
        FMatrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) m.at(k, k) = FieldElement::one();
        return m;
    }
    static FMatrix from_rows(const std::vector<std::vector<FieldElement>> &rows) {
        FMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != m.cols_) throw std::invalid_argument("FMatrix: ragged rows");
            for (std::size_t c = 0; c < m.cols_; ++c) m.at(r, c) = rows[r][c];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldElement &at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    FieldElement &at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }

    bool operator==(const FMatrix &o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const FMatrix &o) const { return !(*this == o); }
    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](const FieldElement &x) { return x.is_zero(); });
    }

    FMatrix operator+(const FMatrix &o) const {
        check_shape(o);
        FMatrix r = *this;
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] += o.e_[k];
        return r;
    }
    FMatrix operator-(const FMatrix &o) const {
        check_shape(o);
        FMatrix r = *this;
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] -= o.e_[k];
        return r;
    }
    FMatrix operator-() const {
        FMatrix r = *this;
        for (auto &x : r.e_) x = -x;
        return r;
    }
    FMatrix operator*(const FMatrix &o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("FMatrix: shape mismatch");
        FMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) += at(i, k) * o.at(k, j);
            }
        return r;
    }
    FMatrix operator*(const FieldElement &s) const {
        FMatrix r = *this;
        for (auto &x : r.e_) x *= s;
        return r;
    }
    FVector operator*(const FVector &v) const {
        if (cols_ != v.size()) throw std::invalid_argument("FMatrix: apply shape mismatch");
        FVector r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k)
                if (!at(i, k).is_zero()) r[i] += at(i, k) * v[k];
        return r;
    }

    FMatrix transpose() const {
        FMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }
    FMatrix adjoint() const {
        FMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
        return r;
    }

    FieldElement trace() const {
        if (rows_ != cols_) throw std::invalid_argument("FMatrix: trace of non-square");
        FieldElement t;
        for (std::size_t k = 0; k < rows_; ++k) t += at(k, k);
        return t;
    }

    FMatrix pow(unsigned n) const {
        FMatrix r = identity(rows_), b = *this;
        while (n) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    void check_shape(const FMatrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("FMatrix: shape mismatch");
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElement> e_;
};

// Reduced row echelon form in place; returns pivot column per row.
inline std::vector<std::size_t> rref(std::vector<FVector> &rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = rows.size();
        for (std::size_t k = r; k < rows.size(); ++k)
            if (!rows[k][c].is_zero()) {
                sel = k;
                break;
            }
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        FieldElement inv = rows[r][c].inv();
        for (auto &x : rows[r]) x *= inv;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == r || rows[k][c].is_zero()) continue;
            FieldElement f = rows[k][c];
            for (std::size_t j = 0; j < cols; ++j) rows[k][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

// Null space basis (canonical, one vector per free column).
inline std::vector<FVector> kernel(const FMatrix &m) {
    std::vector<FVector> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        FVector row(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m.at(i, j);
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> pivots = rref(rows);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<FVector> basis;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        FVector v(m.cols());
        v[c] = FieldElement::one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solve M x = b exactly; nullopt if inconsistent (any solution returned).
inline std::optional<FVector> solve(const FMatrix &m, const FVector &b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: shape mismatch");
    std::vector<FVector> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        FVector row(m.cols() + 1);
        for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m.at(i, j);
        row[m.cols()] = b[i];
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> pivots = rref(rows);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        if (pivots[r] == m.cols()) return std::nullopt; // pivot in the RHS column
    FVector x(m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rows[r][m.cols()];
    return x;
}

inline std::size_t rank(const FMatrix &m) {
    std::vector<FVector> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        FVector row(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m.at(i, j);
        rows.push_back(std::move(row));
    }
    return rref(rows).size();
}

/** Monic-or-zero dense polynomial over the field, coefficient of t^k at [k]. */
using FPoly = std::vector<FieldElement>;

inline std::size_t poly_degree(const FPoly &p) {
    std::size_t d = p.size();
    while (d > 0 && p[d - 1].is_zero()) --d;
    return d == 0 ? 0 : d - 1;
}

inline FPoly poly_trimmed(FPoly p) {
    while (p.size() > 1 && p.back().is_zero()) p.pop_back();
    return p;
}

inline FieldElement poly_eval(const FPoly &p, const FieldElement &x) {
    FieldElement acc;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

inline std::string poly_str(const FPoly &p, const std::string &var = "t") {
    std::string s;
    bool first = true;
    for (std::size_t k = p.size(); k-- > 0;) {
        if (p[k].is_zero()) continue;
        FieldElement c = p[k];
        if (!first) {
            if (field_term_count(c) == 1 && c.coord(0) < 0) {
                s += " - ";
                c = -c;
            } else {
                s += " + ";
            }
        }
        first = false;
        std::string cs = field_term_count(c) > 1 ? "(" + c.str() + ")" : c.str();
        if (k == 0)
            s += cs;
        else
            s += (c.is_one() ? "" : cs + "*") + var + (k == 1 ? "" : "^" + std::to_string(k));
    }
    return first ? "0" : s;
}

// Characteristic polynomial, monic, by the Faddeev-LeVerrier recurrence.
inline FPoly char_poly(const FMatrix &a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("char_poly: not square");
    std::size_t n = a.rows();
    FPoly c(n + 1);
    c[n] = FieldElement::one();
    FMatrix m = FMatrix(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        for (std::size_t j = 0; j < n; ++j) m.at(j, j) += c[n - k + 1];
        FieldElement tr = (a * m).trace();
        c[n - k] = -(tr * FieldElement(Rational(1, static_cast<long>(k))));
    }
    return c;
}

inline FPoly poly_derivative(const FPoly &p) {
    if (p.size() <= 1) return FPoly{FieldElement::zero()};
    FPoly d(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k)
        d[k - 1] = p[k] * FieldElement(Rational(static_cast<long>(k)));
    return poly_trimmed(d);
}

// Euclidean division by a nonzero divisor; returns (quotient, remainder).
inline std::pair<FPoly, FPoly> poly_divmod(const FPoly &a, const FPoly &b) {
    FPoly r = poly_trimmed(a), d = poly_trimmed(b);
    std::size_t db = poly_degree(d);
    if (db == 0 && d[0].is_zero()) throw std::domain_error("poly_divmod: division by zero");
    FPoly q(std::max<std::size_t>(poly_degree(r), db) + 1);
    FieldElement lead = d[db];
    while (poly_degree(r) >= db && !(poly_degree(r) == 0 && r[0].is_zero())) {
        std::size_t dr = poly_degree(r);
        FieldElement f = r[dr] / lead;
        q[dr - db] = f;
        for (std::size_t k = 0; k <= db; ++k) r[dr - db + k] -= f * d[k];
        r = poly_trimmed(r);
        if (dr == db) break;
    }
    return {poly_trimmed(q), poly_trimmed(r)};
}

inline bool poly_is_zero(const FPoly &p) {
    return poly_degree(p) == 0 && (p.empty() || p[0].is_zero());
}

// Monic gcd by the Euclidean algorithm.
inline FPoly poly_gcd(FPoly a, FPoly b) {
    a = poly_trimmed(a);
    b = poly_trimmed(b);
    while (!poly_is_zero(b)) {
        FPoly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!poly_is_zero(a) && !a[poly_degree(a)].is_one()) {
        FieldElement inv = a[poly_degree(a)].inv();
        for (auto &c : a) c *= inv;
    }
    return a;
}

// Deflate p by (t - root); remainder must vanish.
inline FPoly poly_deflate(const FPoly &p, const FieldElement &root) {
    std::size_t d = poly_degree(p);
    FPoly q(d);
    FieldElement carry;
    for (std::size_t k = d; k-- > 0;) {
        carry = p[k + 1] + carry * root;
        q[k] = carry;
    }
    FieldElement rem = p[0] + carry * root;
    if (!rem.is_zero()) throw std::logic_error("poly_deflate: not a root");
    return q;
}

struct RootReport {
    std::vector<std::pair<FieldElement, std::size_t>> roots; // (root, multiplicity)
    bool split = false;  // true when the polynomial factors into linears found
    FPoly remaining;     // unfactored part when split is false
};

namespace detail {

// Durand-Kerner on a monic complex polynomial; fine at degree <= 4 since all
// results are verified exactly afterwards.
inline std::vector<std::complex<double>> numeric_roots(const std::vector<std::complex<double>> &monic) {
    std::size_t d = monic.size() - 1;
    std::vector<std::complex<double>> x(d);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc(1, 0);
    for (std::size_t k = 0; k < d; ++k) {
        acc *= seed;
        x[k] = acc;
    }
    auto eval = [&](std::complex<double> z) {
        std::complex<double> v = 0;
        for (std::size_t k = monic.size(); k-- > 0;) v = v * z + monic[k];
        return v;
    };
    for (int it = 0; it < 500; ++it) {
        double moved = 0;
        for (std::size_t k = 0; k < d; ++k) {
            std::complex<double> den(1, 0);
            for (std::size_t j = 0; j < d; ++j)
                if (j != k) den *= (x[k] - x[j]);
            if (std::abs(den) < 1e-300) den = 1e-300;
            std::complex<double> delta = eval(x[k]) / den;
            x[k] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-15) break;
    }
    return x;
}

// Rational reconstruction by continued fractions with exact verification left
// to the caller.
inline std::optional<Rational> rationalize(double x, long max_den = 1000000) {
    if (!std::isfinite(x)) return std::nullopt;
    double tol = 1e-7 * std::max(1.0, std::abs(x));
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        if (fl > 9e17 || fl < -9e17) return std::nullopt;
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::abs(approx - x) <= tol) return Rational(p1, q1);
        double frac = v - fl;
        if (frac < 1e-12) break;
        v = 1.0 / frac;
    }
    if (q1 != 0 && std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) <= tol)
        return Rational(p1, q1);
    return std::nullopt;
}

// Reconstruct a field element from its images under both real embeddings
// (sqrt2 -> +-1.414...), then verify p(root) = 0 exactly.
inline std::optional<FieldElement> reconstruct_root(const FPoly &p, std::complex<double> mu,
                                                    std::complex<double> nu) {
    const double s = 1.4142135623730950488;
    auto a = rationalize((mu.real() + nu.real()) / 2);
    auto c = rationalize((mu.real() - nu.real()) / (2 * s));
    auto b = rationalize((mu.imag() + nu.imag()) / 2);
    auto d = rationalize((mu.imag() - nu.imag()) / (2 * s));
    if (!a || !b || !c || !d) return std::nullopt;
    FieldElement cand(*a, *b, *c, *d);
    if (poly_eval(p, cand).is_zero()) return cand;
    return std::nullopt;
}

inline void find_roots_rec(const FPoly &poly, RootReport &rep);

// Try the even-polynomial reduction p(t) = g(t^2).
inline bool try_even_reduction(const FPoly &p, RootReport &rep) {
    std::size_t d = poly_degree(p);
    if (d < 2 || d % 2 != 0) return false;
    for (std::size_t k = 1; k < p.size(); k += 2)
        if (!p[k].is_zero()) return false;
    FPoly half((d / 2) + 1);
    for (std::size_t k = 0; k <= d / 2; ++k) half[k] = p[2 * k];
    RootReport sub;
    find_roots_rec(half, sub);
    if (sub.roots.empty()) return false;
    FPoly rest = p;
    bool found = false;
    for (const auto &[u, mult] : sub.roots) {
        auto s = field_sqrt(u);
        if (!s) continue;
        for (const FieldElement &root : {*s, -*s}) {
            std::size_t m = 0;
            while (poly_degree(rest) > 0 && poly_eval(rest, root).is_zero()) {
                rest = poly_deflate(rest, root);
                ++m;
                found = true;
            }
            if (m) rep.roots.emplace_back(root, m);
            if (s->is_zero()) break;
        }
    }
    if (!found) return false;
    if (poly_degree(rest) == 0) {
        rep.split = true;
    } else {
        RootReport tail;
        find_roots_rec(rest, tail);
        for (auto &r : tail.roots) rep.roots.push_back(r);
        rep.split = tail.split;
        rep.remaining = tail.remaining;
    }
    return true;
}

inline void find_roots_rec(const FPoly &poly, RootReport &rep) {
    FPoly p = poly_trimmed(poly);
    std::size_t d = poly_degree(p);
    if (d == 0) {
        rep.split = true;
        return;
    }
    // Make monic.
    if (!p[d].is_one()) {
        FieldElement inv = p[d].inv();
        for (auto &c : p) c *= inv;
    }
    if (d == 1) {
        rep.roots.emplace_back(-p[0], 1);
        rep.split = true;
        return;
    }
    if (d == 2) {
        FieldElement half(Rational(1, 2));
        FieldElement disc = p[1] * p[1] - FieldElement(4) * p[0];
        auto s = field_sqrt(disc);
        if (!s) {
            rep.split = false;
            rep.remaining = p;
            return;
        }
        FieldElement r1 = (-p[1] + *s) * half;
        FieldElement r2 = (-p[1] - *s) * half;
        if (r1 == r2) {
            rep.roots.emplace_back(r1, 2);
        } else {
            rep.roots.emplace_back(r1, 1);
            rep.roots.emplace_back(r2, 1);
        }
        rep.split = true;
        return;
    }
    if (try_even_reduction(p, rep)) return;
    // Numeric candidates come from the square-free part (simple roots keep
    // the iteration sharp); multiplicities return through exact deflation.
    FPoly sf = p;
    FPoly g = poly_gcd(p, poly_derivative(p));
    if (poly_degree(g) > 0) {
        auto [q, rem] = poly_divmod(p, g);
        if (poly_is_zero(rem)) sf = q;
    }
    std::vector<std::complex<double>> emb1(sf.size()), emb2(sf.size());
    for (std::size_t k = 0; k < sf.size(); ++k) {
        emb1[k] = sf[k].to_complex();
        emb2[k] = sf[k].to_complex_conj_embedding();
    }
    auto roots1 = numeric_roots(emb1);
    auto roots2 = numeric_roots(emb2);
    FPoly rest = p;
    for (std::complex<double> mu : roots1) {
        if (poly_degree(rest) == 0) break;
        for (std::complex<double> nu : roots2) {
            auto cand = reconstruct_root(rest, mu, nu);
            if (!cand) continue;
            std::size_t m = 0;
            while (poly_degree(rest) > 0 && poly_eval(rest, *cand).is_zero()) {
                rest = poly_deflate(rest, *cand);
                ++m;
            }
            if (m) {
                bool merged = false;
                for (auto &[r, mm] : rep.roots)
                    if (r == *cand) {
                        mm += m;
                        merged = true;
                    }
                if (!merged) rep.roots.emplace_back(*cand, m);
            }
            break;
        }
    }
    if (poly_degree(rest) == 0) {
        rep.split = true;
    } else if (poly_degree(rest) < d) {
        RootReport tail;
        find_roots_rec(rest, tail);
        for (auto &r : tail.roots) rep.roots.push_back(r);
        rep.split = tail.split;
        rep.remaining = tail.remaining;
    } else {
        rep.split = false;
        rep.remaining = rest;
    }
}

} // namespace detail

// All roots of p that lie in Q(i, sqrt2), with multiplicities. Every root is
// verified exactly; `split` certifies that p factors completely into the
// returned linears.
inline RootReport find_roots(const FPoly &p) {
    RootReport rep;
    detail::find_roots_rec(p, rep);
    std::sort(rep.roots.begin(), rep.roots.end(),
              [](const auto &x, const auto &y) { return x.first < y.first; });
    return rep;
}

// Minimal polynomial of a square matrix (monic), by incremental dependency of
// the powers I, A, A^2, ...
inline FPoly min_poly(const FMatrix &a) {
    std::size_t n = a.rows();
    std::size_t dim = n * n;
    std::vector<FVector> pows; // flattened powers
    FMatrix cur = FMatrix::identity(n);
    for (std::size_t d = 0;; ++d) {
        FVector flat(dim);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = cur.at(i, j);
        // Solve pows * x = flat
        if (!pows.empty()) {
            FMatrix m(dim, pows.size());
            for (std::size_t c = 0; c < pows.size(); ++c)
                for (std::size_t r = 0; r < dim; ++r) m.at(r, c) = pows[c][r];
            if (auto x = solve(m, flat)) {
                FPoly p(d + 1);
                for (std::size_t k = 0; k < d; ++k) p[k] = -(*x)[k];
                p[d] = FieldElement::one();
                return p;
            }
        }
        pows.push_back(std::move(flat));
        cur = cur * a;
        if (d > n) throw std::logic_error("min_poly: no dependency found");
    }
}

} // namespace bellalg
