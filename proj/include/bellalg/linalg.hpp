#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bellalg/ratfunc.hpp"

namespace bellalg {

class SymMatrix;

/**
 * SymVector: dense column vector over LaurentPoly.
 */
class SymVector {
  public:
    SymVector(ParamSet ps, std::size_t dim)
        : ps_(std::move(ps)), e_(dim, LaurentPoly::zero(ps_)) {}
    SymVector(ParamSet ps, std::vector<LaurentPoly> entries)
        : ps_(std::move(ps)), e_(std::move(entries)) {}

    std::size_t dim() const { return e_.size(); }
    const ParamSet &params() const { return ps_; }
    const LaurentPoly &operator[](std::size_t k) const { return e_[k]; }
    LaurentPoly &operator[](std::size_t k) { return e_[k]; }

    bool operator==(const SymVector &o) const { return e_ == o.e_; }
    bool operator!=(const SymVector &o) const { return !(*this == o); }
    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](const LaurentPoly &p) { return p.is_zero(); });
    }

    SymVector operator+(const SymVector &o) const {
        check_dim(o);
        SymVector r = *this;
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] += o.e_[k];
        return r;
    }
    SymVector operator-(const SymVector &o) const {
        check_dim(o);
        SymVector r = *this;
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] -= o.e_[k];
        return r;
    }
    SymVector operator-() const {
        SymVector r = *this;
        for (auto &p : r.e_) p = -p;
        return r;
    }
    SymVector operator*(const LaurentPoly &s) const {
        SymVector r = *this;
        for (auto &p : r.e_) p *= s;
        return r;
    }
    SymVector operator*(const FieldElement &s) const {
        SymVector r = *this;
        for (auto &p : r.e_) p = p * s;
        return r;
    }

    // Hermitian inner product <this|other>; entries must be parameter-free.
    FieldElement inner(const SymVector &o) const {
        check_dim(o);
        FieldElement acc;
        for (std::size_t k = 0; k < e_.size(); ++k)
            acc += e_[k].constant_value().conj() * o.e_[k].constant_value();
        return acc;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t k = 0; k < e_.size(); ++k) s += (k ? ", " : "") + e_[k].str();
        return s + ")";
    }

  private:
    void check_dim(const SymVector &o) const {
        if (e_.size() != o.e_.size()) throw std::invalid_argument("SymVector: dimension mismatch");
    }
    ParamSet ps_;
    std::vector<LaurentPoly> e_;
};

/**
 * SymMatrix: dense matrix over LaurentPoly, row-major.
 */
class SymMatrix {
  public:
    SymMatrix(ParamSet ps, std::size_t rows, std::size_t cols)
        : ps_(std::move(ps)), rows_(rows), cols_(cols), e_(rows * cols, LaurentPoly::zero(ps_)) {}

    static SymMatrix identity(const ParamSet &ps, std::size_t n) {
        SymMatrix m(ps, n, n);
        for (std::size_t k = 0; k < n; ++k) m.at(k, k) = LaurentPoly::one(ps);
        return m;
    }
    static SymMatrix zero(const ParamSet &ps, std::size_t rows, std::size_t cols) {
        return SymMatrix(ps, rows, cols);
    }
    // Convenience: build from field-element rows (no parameters involved).
    static SymMatrix from_field(const ParamSet &ps,
                                const std::vector<std::vector<FieldElement>> &rows) {
        SymMatrix m(ps, rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != m.cols_) throw std::invalid_argument("from_field: ragged rows");
            for (std::size_t c = 0; c < m.cols_; ++c)
                m.at(r, c) = LaurentPoly::constant(ps, rows[r][c]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const ParamSet &params() const { return ps_; }

    const LaurentPoly &at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    LaurentPoly &at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }

    bool operator==(const SymMatrix &o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const SymMatrix &o) const { return !(*this == o); }
    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](const LaurentPoly &p) { return p.is_zero(); });
    }

    SymMatrix operator+(const SymMatrix &o) const {
        check_same_shape(o);
        SymMatrix r = *this;
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] += o.e_[k];
        return r;
    }
    SymMatrix operator-(const SymMatrix &o) const {
        check_same_shape(o);
        SymMatrix r = *this;
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] -= o.e_[k];
        return r;
    }
    SymMatrix operator-() const {
        SymMatrix r = *this;
        for (auto &p : r.e_) p = -p;
        return r;
    }

    SymMatrix operator*(const SymMatrix &o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("SymMatrix: shape mismatch in multiplication");
        SymMatrix r(ps_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const LaurentPoly &a = at(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    if (o.at(k, j).is_zero()) continue;
                    r.at(i, j) += a * o.at(k, j);
                }
            }
        return r;
    }

    SymVector operator*(const SymVector &v) const {
        if (cols_ != v.dim()) throw std::invalid_argument("SymMatrix: shape mismatch in apply");
        SymVector r(ps_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k)
                if (!at(i, k).is_zero() && !v[k].is_zero()) r[i] += at(i, k) * v[k];
        return r;
    }

    SymMatrix operator*(const LaurentPoly &s) const {
        SymMatrix r = *this;
        for (auto &p : r.e_) p *= s;
        return r;
    }
    SymMatrix operator*(const FieldElement &s) const {
        SymMatrix r = *this;
        for (auto &p : r.e_) p = p * s;
        return r;
    }

    SymMatrix transpose() const {
        SymMatrix r(ps_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    // Conjugate transpose. Defined when every remaining symbolic parameter is
    // declared real (conjugation then fixes it); otherwise an error.
    SymMatrix adjoint(const std::set<std::string> &real_params = {}) const {
        SymMatrix r(ps_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                for (const auto &name : at(i, j).used_params())
                    if (!real_params.count(name))
                        throw std::domain_error(
                            "SymMatrix::adjoint: symbolic parameter '" + name +
                            "' is not declared real; conjugation is undefined");
                LaurentPoly conj(ps_);
                for (const auto &[e, c] : at(i, j).terms()) {
                    LaurentPoly mono = LaurentPoly::one(ps_) * c.conj();
                    for (std::size_t k = 0; k < ps_.size(); ++k)
                        if (e[k] != 0) mono *= LaurentPoly::monomial(ps_, ps_.name(k), e[k]);
                    conj += mono;
                }
                r.at(j, i) = conj;
            }
        return r;
    }

    SymMatrix pow(unsigned n) const {
        if (rows_ != cols_) throw std::invalid_argument("SymMatrix::pow: not square");
        SymMatrix r = identity(ps_, rows_), b = *this;
        while (n > 0) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    SymMatrix substitute(const std::map<std::string, LaurentPoly> &bindings) const {
        SymMatrix r = *this;
        for (auto &p : r.e_) p = p.substitute(bindings);
        return r;
    }
    SymMatrix substitute(const std::string &name, const LaurentPoly &value) const {
        return substitute(std::map<std::string, LaurentPoly>{{name, value}});
    }
    SymMatrix rebased(const ParamSet &bigger) const {
        SymMatrix r(bigger, rows_, cols_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k].rebased(bigger);
        return r;
    }

    // Exact inverse by Gaussian elimination over the fraction field. Errors
    // if the matrix is singular or the inverse has non-Laurent entries.
    SymMatrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("SymMatrix::inverse: not square");
        std::size_t n = rows_;
        std::vector<std::vector<RatFunc>> a(n, std::vector<RatFunc>(2 * n, RatFunc(ps_)));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a[i][j] = RatFunc(at(i, j));
            a[i][n + i] = RatFunc(LaurentPoly::one(ps_));
        }
        for (std::size_t col = 0; col < n; ++col) {
            // Prefer a monomial pivot to keep fractions small.
            std::size_t piv = n;
            for (std::size_t r = col; r < n; ++r) {
                if (a[r][col].is_zero()) continue;
                if (piv == n) piv = r;
                if (a[r][col].is_polynomial() && a[r][col].num().is_unit()) {
                    piv = r;
                    break;
                }
            }
            if (piv == n) throw std::domain_error("SymMatrix::inverse: matrix is singular");
            std::swap(a[col], a[piv]);
            RatFunc inv = a[col][col].inv();
            for (std::size_t j = 0; j < 2 * n; ++j) a[col][j] *= inv;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col || a[r][col].is_zero()) continue;
                RatFunc f = a[r][col];
                for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
            }
        }
        SymMatrix out(ps_, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto p = a[i][n + j].as_polynomial();
                if (!p)
                    throw std::domain_error(
                        "SymMatrix::inverse: inverse entry is not a Laurent polynomial: " +
                        a[i][n + j].str());
                out.at(i, j) = *p;
            }
        return out;
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            s += "[ ";
            for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + at(i, j).str();
            s += " ]\n";
        }
        return s;
    }

  private:
    void check_same_shape(const SymMatrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("SymMatrix: shape mismatch");
    }

    ParamSet ps_;
    std::size_t rows_, cols_;
    std::vector<LaurentPoly> e_;
};

// Kronecker product: (a(x)b)[i*rb+k, j*cb+l] = a[i,j] * b[k,l].
inline SymMatrix kron(const SymMatrix &a, const SymMatrix &b) {
    SymMatrix r(a.params(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (!b.at(k, l).is_zero())
                        r.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
        }
    return r;
}

inline SymVector kron(const SymVector &a, const SymVector &b) {
    SymVector r(a.params(), a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < b.dim(); ++k) r[i * b.dim() + k] = a[i] * b[k];
    return r;
}

// Pauli matrices over an arbitrary ParamSet.
inline SymMatrix pauli_x(const ParamSet &ps) {
    return SymMatrix::from_field(ps, {{FieldElement(0), FieldElement(1)},
                                      {FieldElement(1), FieldElement(0)}});
}
inline SymMatrix pauli_y(const ParamSet &ps) {
    return SymMatrix::from_field(ps, {{FieldElement(0), -FieldElement::i()},
                                      {FieldElement::i(), FieldElement(0)}});
}
inline SymMatrix pauli_z(const ParamSet &ps) {
    return SymMatrix::from_field(ps, {{FieldElement(1), FieldElement(0)},
                                      {FieldElement(0), -FieldElement(1)}});
}
inline SymMatrix pauli_plus(const ParamSet &ps) {
    return SymMatrix::from_field(ps, {{FieldElement(0), FieldElement(1)},
                                      {FieldElement(0), FieldElement(0)}});
}
inline SymMatrix pauli_minus(const ParamSet &ps) {
    return SymMatrix::from_field(ps, {{FieldElement(0), FieldElement(0)},
                                      {FieldElement(1), FieldElement(0)}});
}
// The 4x4 swap (classical permutation solution of the braid YBE).
inline SymMatrix swap_matrix(const ParamSet &ps) {
    SymMatrix p(ps, 4, 4);
    p.at(0, 0) = p.at(1, 2) = p.at(2, 1) = p.at(3, 3) = LaurentPoly::one(ps);
    return p;
}

struct YbeWitness {
    std::size_t row = 0, col = 0;
    std::string value;
};

struct YbeResult {
    bool holds = false;
    std::optional<YbeWitness> witness; // set on failure
    std::string convention;            // which spectral convention succeeded
};

namespace detail {

inline std::optional<YbeWitness> first_nonzero(const SymMatrix &m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) return YbeWitness{i, j, m.at(i, j).str()};
    return std::nullopt;
}

} // namespace detail

// Braided Yang-Baxter equation for a 4x4 matrix acting on a 2-qubit square:
// (r(x)I)(I(x)r)(r(x)I) = (I(x)r)(r(x)I)(I(x)r), decided exactly.
inline YbeResult check_braid_ybe(const SymMatrix &r) {
    if (r.rows() != 4 || r.cols() != 4)
        throw std::invalid_argument("check_braid_ybe: matrix must be 4x4");
    SymMatrix i2 = SymMatrix::identity(r.params(), 2);
    SymMatrix r1 = kron(r, i2), r2 = kron(i2, r);
    SymMatrix diff = r1 * r2 * r1 - r2 * r1 * r2;
    YbeResult out;
    out.witness = detail::first_nonzero(diff);
    out.holds = !out.witness.has_value();
    return out;
}

/**
 * SpectralFamily: a 4x4 matrix whose entries are Laurent in one distinguished
 * spectral parameter (other parameters may appear and stay symbolic).
 */
struct SpectralFamily {
    std::string param;
    SymMatrix matrix;

    SymMatrix instantiate(const LaurentPoly &value) const {
        return matrix.substitute(param, value);
    }
    SymMatrix instantiate(const FieldElement &value) const {
        return matrix.substitute(param, LaurentPoly::constant(matrix.params(), value));
    }
};

// Spectral YBE in multiplicative braid form. The primary convention has
// arguments (u, uv, v); the ratio convention (u, u/v, v) is also tried and
// the report names whichever succeeded.
inline YbeResult check_spectral_ybe(const SpectralFamily &f) {
    if (f.matrix.rows() != 4 || f.matrix.cols() != 4)
        throw std::invalid_argument("check_spectral_ybe: matrix must be 4x4");
    auto fresh = [&](std::string base) {
        while (f.matrix.params().index_of(base) >= 0) base += "@";
        return base;
    };
    std::string un = fresh("u@"), vn = fresh("v@");
    ParamSet ext = f.matrix.params().extended({un, vn});
    SymMatrix m = f.matrix.rebased(ext);
    LaurentPoly u = LaurentPoly::monomial(ext, un, 1);
    LaurentPoly v = LaurentPoly::monomial(ext, vn, 1);
    SymMatrix i2 = SymMatrix::identity(ext, 2);
    auto at_arg = [&](const LaurentPoly &arg) { return m.substitute(f.param, arg); };

    auto attempt = [&](const LaurentPoly &mid) -> std::optional<YbeWitness> {
        SymMatrix ru1 = kron(at_arg(u), i2);
        SymMatrix rm2 = kron(i2, at_arg(mid));
        SymMatrix rv1 = kron(at_arg(v), i2);
        SymMatrix rv2 = kron(i2, at_arg(v));
        SymMatrix rm1 = kron(at_arg(mid), i2);
        SymMatrix ru2 = kron(i2, at_arg(u));
        SymMatrix diff = ru1 * rm2 * rv1 - rv2 * rm1 * ru2;
        return detail::first_nonzero(diff);
    };

    YbeResult out;
    auto w_prod = attempt(u * v);
    if (!w_prod) {
        out.holds = true;
        out.convention = "product (u, uv, v)";
        return out;
    }
    auto w_ratio = attempt(u * v.unit_inverse());
    if (!w_ratio) {
        out.holds = true;
        out.convention = "ratio (u, u/v, v)";
        return out;
    }
    out.holds = false;
    out.witness = w_prod;
    out.convention = "none";
    return out;
}

} // namespace bellalg
