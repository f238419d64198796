#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bellalg/bellmodels.hpp"
#include "bellalg/linalg.hpp"
#include "bellalg/ratfunc.hpp"

namespace bellalg {

/**
 * Generator: one of the eight algebra generators a,b,c,d and their primed
 * copies, totally ordered a < b < c < d < a' < b' < c' < d'.
 */
struct Generator {
    std::uint8_t code = 0; // 0..3 unprimed a..d, 4..7 primed

    Generator() = default;
    explicit Generator(std::uint8_t c) : code(c) {
        if (c > 7) throw std::invalid_argument("Generator: code out of range");
    }
    Generator(char letter, bool primed) {
        if (letter < 'a' || letter > 'd') throw std::invalid_argument("Generator: letter must be a..d");
        code = static_cast<std::uint8_t>((letter - 'a') + (primed ? 4 : 0));
    }
    char letter() const { return static_cast<char>('a' + (code & 3)); }
    bool primed() const { return code >= 4; }
    std::string str() const { return std::string(1, letter()) + (primed() ? "'" : ""); }

    bool operator==(const Generator &o) const { return code == o.code; }
    bool operator<(const Generator &o) const { return code < o.code; }
};

inline Generator gen_a(bool primed = false) { return Generator('a', primed); }
inline Generator gen_b(bool primed = false) { return Generator('b', primed); }
inline Generator gen_c(bool primed = false) { return Generator('c', primed); }
inline Generator gen_d(bool primed = false) { return Generator('d', primed); }

/** Word: a finite product of generators; the empty word is the unit. */
using Word = std::vector<std::uint8_t>;

inline Word word_of(std::initializer_list<Generator> gs) {
    Word w;
    for (Generator g : gs) w.push_back(g.code);
    return w;
}

inline std::string word_str(const Word &w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += "*";
        s += Generator{w[k]}.str();
    }
    return s;
}

// Degree-lexicographic word order.
struct DegLex {
    bool operator()(const Word &x, const Word &y) const {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    }
};

/**
 * NCPoly: noncommutative polynomial in the generators with LaurentPoly
 * coefficients. Terms are kept in deglex order with no zero coefficients.
 */
class NCPoly {
  public:
    using TermMap = std::map<Word, LaurentPoly, DegLex>;

    NCPoly() = default;
    explicit NCPoly(ParamSet ps) : ps_(std::move(ps)) {}

    static NCPoly zero(const ParamSet &ps) { return NCPoly(ps); }
    static NCPoly one(const ParamSet &ps) { return term(ps, Word{}, LaurentPoly::one(ps)); }
    static NCPoly generator(const ParamSet &ps, Generator g) {
        return term(ps, Word{g.code}, LaurentPoly::one(ps));
    }
    static NCPoly term(const ParamSet &ps, Word w, LaurentPoly c) {
        NCPoly p(ps);
        if (!c.is_zero()) p.terms_.emplace(std::move(w), std::move(c));
        return p;
    }

    const ParamSet &params() const { return ps_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Maximum word length (0 for the zero polynomial).
    std::size_t degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }
    bool is_homogeneous() const {
        return terms_.empty() || terms_.begin()->first.size() == terms_.rbegin()->first.size();
    }

    bool operator==(const NCPoly &o) const { return ps_ == o.ps_ && terms_ == o.terms_; }
    bool operator!=(const NCPoly &o) const { return !(*this == o); }
    bool operator<(const NCPoly &o) const { return terms_ < o.terms_; } // deterministic order

    NCPoly operator-() const {
        NCPoly r(ps_);
        for (const auto &[w, c] : terms_) r.terms_[w] = -c;
        return r;
    }
    NCPoly operator+(const NCPoly &o) const {
        check_params(o);
        NCPoly r = *this;
        for (const auto &[w, c] : o.terms_) r.add_term(w, c);
        return r;
    }
    NCPoly operator-(const NCPoly &o) const { return *this + (-o); }

    NCPoly operator*(const NCPoly &o) const {
        check_params(o);
        NCPoly r(ps_);
        for (const auto &[w1, c1] : terms_)
            for (const auto &[w2, c2] : o.terms_) {
                Word w = w1;
                w.insert(w.end(), w2.begin(), w2.end());
                r.add_term(w, c1 * c2);
            }
        return r;
    }

    NCPoly operator*(const LaurentPoly &s) const {
        NCPoly r(ps_);
        if (s.is_zero()) return r;
        for (const auto &[w, c] : terms_) r.add_term(w, c * s);
        return r;
    }
    NCPoly operator*(const FieldElement &s) const { return *this * LaurentPoly::constant(ps_, s); }

    NCPoly &operator+=(const NCPoly &o) { return *this = *this + o; }
    NCPoly &operator-=(const NCPoly &o) { return *this = *this - o; }
    NCPoly &operator*=(const NCPoly &o) { return *this = *this * o; }

    std::pair<Word, LaurentPoly> leading_term() const {
        if (terms_.empty()) throw std::domain_error("NCPoly: leading_term of zero");
        return *terms_.rbegin();
    }

    // Divide by the invertible leading unit of the deglex-leading coefficient,
    // making the representation canonical up to ring units.
    NCPoly unit_normalized() const {
        if (is_zero()) return *this;
        LaurentPoly u = leading_term().second.leading_unit().unit_inverse();
        return *this * u;
    }

    // Letters actually occurring.
    std::set<std::uint8_t> support() const {
        std::set<std::uint8_t> s;
        for (const auto &[w, c] : terms_) s.insert(w.begin(), w.end());
        return s;
    }

    NCPoly substitute_params(const std::map<std::string, LaurentPoly> &bindings) const {
        NCPoly r(ps_);
        for (const auto &[w, c] : terms_) r.add_term(w, c.substitute(bindings));
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        // Render highest-degree terms first, the way quadratic relations are usually written.
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto &[w, c] = *it;
            LaurentPoly cc = c;
            std::string sep = first ? "" : " + ";
            if (cc.terms().size() == 1 &&
                detail::coeff_is_negative_single(cc.terms().begin()->second)) {
                sep = first ? "-" : " - ";
                cc = -cc;
            }
            std::string ws = word_str(w);
            std::string piece;
            bool needs_parens =
                cc.terms().size() > 1 ||
                (!cc.is_zero() && field_term_count(cc.terms().begin()->second) > 1);
            if (w.empty()) {
                piece = (needs_parens && !first) ? "(" + cc.str() + ")" : cc.str();
            } else if (cc.is_one()) {
                piece = ws;
            } else if (needs_parens) {
                piece = "(" + cc.str() + ")*" + ws;
            } else {
                piece = cc.str() + "*" + ws;
            }
            out += sep + piece;
            first = false;
        }
        return out;
    }

  private:
    void check_params(const NCPoly &o) const {
        if (ps_ != o.ps_) throw std::invalid_argument("NCPoly: parameter-set mismatch");
    }
    void add_term(const Word &w, const LaurentPoly &c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    ParamSet ps_;
    TermMap terms_;
};

inline NCPoly operator*(const LaurentPoly &s, const NCPoly &p) { return p * s; }

/**
 * RelationSet: a deduplicated list of unit-normalized relations with labels.
 * Relations equal up to a ring unit merge; all source labels are retained.
 */
class RelationSet {
  public:
    RelationSet() = default;
    explicit RelationSet(ParamSet ps) : ps_(std::move(ps)) {}

    const ParamSet &params() const { return ps_; }
    std::size_t size() const { return rels_.size(); }
    const NCPoly &relation(std::size_t k) const { return rels_[k]; }
    const std::string &label(std::size_t k) const { return labels_[k]; }
    const std::vector<NCPoly> &relations() const { return rels_; }

    void add(const NCPoly &p, const std::string &label) {
        if (p.is_zero()) return;
        NCPoly n = p.unit_normalized();
        for (std::size_t k = 0; k < rels_.size(); ++k) {
            if (rels_[k] == n) {
                if (!label.empty()) labels_[k] += "," + label;
                return;
            }
        }
        rels_.push_back(std::move(n));
        labels_.push_back(label);
    }

    RelationSet merged(const RelationSet &o) const {
        RelationSet r = *this;
        for (std::size_t k = 0; k < o.size(); ++k) r.add(o.relation(k), o.label(k));
        return r;
    }

    // Set equality up to unit normalization (labels ignored).
    bool same_relations(const RelationSet &o) const {
        std::set<NCPoly> a(rels_.begin(), rels_.end());
        std::set<NCPoly> b(o.rels_.begin(), o.rels_.end());
        return a == b;
    }
    bool contains(const NCPoly &p) const {
        NCPoly n = p.unit_normalized();
        for (const auto &r : rels_)
            if (r == n) return true;
        return false;
    }

    RelationSet substitute_params(const std::map<std::string, LaurentPoly> &bindings) const {
        RelationSet r(ps_);
        for (std::size_t k = 0; k < rels_.size(); ++k)
            r.add(rels_[k].substitute_params(bindings), labels_[k]);
        return r;
    }

    std::string str() const {
        std::string out;
        for (std::size_t k = 0; k < rels_.size(); ++k) {
            if (!labels_[k].empty()) out += labels_[k] + ": ";
            out += rels_[k].str() + "\n";
        }
        return out;
    }

  private:
    ParamSet ps_;
    std::vector<NCPoly> rels_;
    std::vector<std::string> labels_;
};

// ---- FRT derivation ----

namespace detail {

using NCMat = std::vector<std::vector<NCPoly>>;

// 4x4 matrix of words: kron(T_left, T_right) with the left slot written first.
inline NCMat t_kron(const ParamSet &ps, bool left_primed, bool right_primed) {
    auto t_entry = [&](bool primed, std::size_t i, std::size_t j) {
        static const char letters[2][2] = {{'a', 'b'}, {'c', 'd'}};
        return Generator(letters[i][j], primed);
    };
    NCMat m(4, std::vector<NCPoly>(4, NCPoly(ps)));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) {
                    Word w{t_entry(left_primed, i, j).code, t_entry(right_primed, k, l).code};
                    m[2 * i + k][2 * j + l] = NCPoly::term(ps, w, LaurentPoly::one(ps));
                }
    return m;
}

inline NCMat scalar_left_mul(const SymMatrix &s, const NCMat &m) {
    NCMat r(4, std::vector<NCPoly>(4, NCPoly(m[0][0].params())));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                if (!s.at(i, k).is_zero()) r[i][j] += m[k][j] * s.at(i, k);
    return r;
}

inline NCMat scalar_right_mul(const NCMat &m, const SymMatrix &s) {
    NCMat r(4, std::vector<NCPoly>(4, NCPoly(m[0][0].params())));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                if (!s.at(k, j).is_zero()) r[i][j] += m[i][k] * s.at(k, j);
    return r;
}

} // namespace detail

/**
 * Extract the quadratic relations of R (T_left (x) T_right) = (T_right (x)
 * T_left) R. Nonzero entries of the difference are collected, normalized and
 * deduplicated; labels record the source entry (i,j).
 */
inline RelationSet frt_derive(const SymMatrix &r, bool left_primed, bool right_primed,
                              const std::string &label_prefix = "") {
    if (r.rows() != 4 || r.cols() != 4)
        throw std::invalid_argument("frt_derive: matrix must be 4x4");
    const ParamSet &ps = r.params();
    detail::NCMat lhs = detail::scalar_left_mul(r, detail::t_kron(ps, left_primed, right_primed));
    detail::NCMat rhs = detail::scalar_right_mul(detail::t_kron(ps, right_primed, left_primed), r);
    RelationSet out(ps);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            NCPoly e = lhs[i][j] - rhs[i][j];
            if (!e.is_zero())
                out.add(e, label_prefix + "E(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    return out;
}

// Substitute g -> scale(g) * g in every relation and renormalize. Scale
// factors are scalars, so only coefficients change.
inline RelationSet apply_rescaling(const RelationSet &rels,
                                   const std::map<std::uint8_t, LaurentPoly> &scale) {
    for (const auto &[g, s] : scale)
        if (!s.is_unit())
            throw std::domain_error("apply_rescaling: scale for " + Generator{g}.str() +
                                    " is not an invertible monomial: " + s.str());
    RelationSet out(rels.params());
    for (std::size_t k = 0; k < rels.size(); ++k) {
        NCPoly p(rels.params());
        for (const auto &[w, c] : rels.relation(k).terms()) {
            LaurentPoly f = c;
            for (std::uint8_t g : w) {
                auto it = scale.find(g);
                if (it != scale.end()) f *= it->second;
            }
            p += NCPoly::term(rels.params(), w, f);
        }
        out.add(p, rels.label(k));
    }
    return out;
}

// ---- builders for the named relation sets ----

inline ParamSet algebra_params() { return ParamSet({"q"}); }

namespace detail {

inline NCPoly mono2(const ParamSet &ps, Generator g1, Generator g2, const LaurentPoly &c) {
    return NCPoly::term(ps, word_of({g1, g2}), c);
}

} // namespace detail

// The six defining relations of A_omega before rescaling (deformation
// parameter q symbolic): aa=dd, ab=q dc, bb=w q^2 cc, ad=da, ba=w q cd,
// bc=w cb.
inline RelationSet a_omega_six(OmegaFlag w, const ParamSet &ps = algebra_params()) {
    int om = omega_value(w);
    LaurentPoly one = LaurentPoly::one(ps);
    LaurentPoly q = LaurentPoly::monomial(ps, "q", 1);
    LaurentPoly q2 = LaurentPoly::monomial(ps, "q", 2);
    FieldElement fom(om);
    auto A = gen_a(), B = gen_b(), C = gen_c(), D = gen_d();
    RelationSet out(ps);
    out.add(detail::mono2(ps, A, A, one) - detail::mono2(ps, D, D, one), "aa=dd");
    out.add(detail::mono2(ps, A, B, one) - detail::mono2(ps, D, C, q), "ab=q*dc");
    out.add(detail::mono2(ps, B, B, one) - detail::mono2(ps, C, C, q2 * fom), "bb=wq2*cc");
    out.add(detail::mono2(ps, A, D, one) - detail::mono2(ps, D, A, one), "ad=da");
    out.add(detail::mono2(ps, B, A, one) - detail::mono2(ps, C, D, q * fom), "ba=wq*cd");
    out.add(detail::mono2(ps, B, C, one) - detail::mono2(ps, C, B, one * fom), "bc=w*cb");
    return out;
}

// [F1] = ca - w q^-1 bd, [F2] = ac - q^-1 db.
inline NCPoly f1_relation(OmegaFlag w, const ParamSet &ps = algebra_params()) {
    LaurentPoly qi = LaurentPoly::monomial(ps, "q", -1, FieldElement(omega_value(w)));
    return detail::mono2(ps, gen_c(), gen_a(), LaurentPoly::one(ps)) -
           detail::mono2(ps, gen_b(), gen_d(), qi);
}
inline NCPoly f2_relation(OmegaFlag w, const ParamSet &ps = algebra_params()) {
    (void)w;
    LaurentPoly qi = LaurentPoly::monomial(ps, "q", -1);
    return detail::mono2(ps, gen_a(), gen_c(), LaurentPoly::one(ps)) -
           detail::mono2(ps, gen_d(), gen_b(), qi);
}

// The rescaled (q-free) presentation of A_omega, i.e. the relations of the
// quotient after absorbing q into c: aa=dd, ad=da, bb=w cc, bc=w cb, ab=dc,
// ba=w cd.
inline RelationSet a_omega_rescaled(OmegaFlag w, const ParamSet &ps = algebra_params()) {
    return apply_rescaling(a_omega_six(w, ps),
                           {{gen_c().code, LaurentPoly::monomial(ps, "q", -1)}});
}
inline NCPoly f1_rescaled(OmegaFlag w, const ParamSet &ps = algebra_params()) {
    return detail::mono2(ps, gen_c(), gen_a(), LaurentPoly::one(ps)) -
           detail::mono2(ps, gen_b(), gen_d(),
                         LaurentPoly::constant(ps, FieldElement(omega_value(w))));
}
inline NCPoly f2_rescaled(OmegaFlag w, const ParamSet &ps = algebra_params()) {
    (void)w;
    return detail::mono2(ps, gen_a(), gen_c(), LaurentPoly::one(ps)) -
           detail::mono2(ps, gen_d(), gen_b(), LaurentPoly::one(ps));
}

// ---- bounded-degree two-sided ideal membership with certificates ----

struct CertTerm {
    Word left;
    std::size_t relation_index = 0;
    Word right;
    RatFunc coeff;
};

struct IdealCertificate {
    std::vector<CertTerm> combination;
};

struct MembershipResult {
    bool member = false;
    std::optional<IdealCertificate> certificate;
    std::size_t bound = 0;
    std::size_t span_size = 0; // how many products w*r*v were considered
};

// Re-evaluate a certificate through plain noncommutative arithmetic; shares
// no code with the span solver. Exact: sums num/den terms over a running
// common denominator.
inline bool verify_certificate(const NCPoly &target, const RelationSet &rels,
                               const IdealCertificate &cert) {
    const ParamSet &ps = target.params();
    NCPoly acc_num(ps);
    LaurentPoly acc_den = LaurentPoly::one(ps);
    for (const CertTerm &t : cert.combination) {
        if (t.relation_index >= rels.size()) return false;
        NCPoly prod = NCPoly::term(ps, t.left, LaurentPoly::one(ps)) *
                      rels.relation(t.relation_index) *
                      NCPoly::term(ps, t.right, LaurentPoly::one(ps));
        // acc_num/acc_den += coeff.num/coeff.den * prod
        acc_num = acc_num * t.coeff.den() + prod * (t.coeff.num() * acc_den);
        acc_den = acc_den * t.coeff.den();
    }
    NCPoly want(ps);
    for (const auto &[w, c] : target.terms()) want += NCPoly::term(ps, w, c * acc_den);
    return acc_num == want;
}

namespace detail {

using SparseVec = std::map<Word, RatFunc, DegLex>;

struct SpanRow {
    Word pivot;
    SparseVec vec;                        // normalized: vec[pivot] == 1
    std::map<std::size_t, RatFunc> hist;  // row as combination of generators
};

inline void axpy(SparseVec &v, const RatFunc &f, const SparseVec &w,
                 std::map<std::size_t, RatFunc> *hist, const std::map<std::size_t, RatFunc> &whist) {
    for (const auto &[key, val] : w) {
        auto it = v.find(key);
        if (it == v.end()) {
            RatFunc nv = -(f * val);
            if (!nv.is_zero()) v.emplace(key, std::move(nv));
        } else {
            it->second -= f * val;
            if (it->second.is_zero()) v.erase(it);
        }
    }
    if (hist) {
        for (const auto &[j, val] : whist) {
            auto it = hist->find(j);
            if (it == hist->end()) {
                RatFunc nv = -(f * val);
                if (!nv.is_zero()) hist->emplace(j, std::move(nv));
            } else {
                it->second -= f * val;
                if (it->second.is_zero()) hist->erase(it);
            }
        }
    }
}

// Reduce v (with history) against the basis. One pass in insertion order
// suffices: each row was reduced against all earlier rows when added, so no
// row can reintroduce an earlier pivot.
inline void reduce_against(const std::vector<SpanRow> &basis, SparseVec &v,
                           std::map<std::size_t, RatFunc> &hist) {
    for (const SpanRow &row : basis) {
        if (v.empty()) return;
        auto it = v.find(row.pivot);
        if (it == v.end()) continue;
        RatFunc f = it->second;
        axpy(v, f, row.vec, &hist, row.hist);
    }
}

inline void enumerate_words(const std::vector<std::uint8_t> &letters, std::size_t len, Word &cur,
                            std::vector<Word> &out) {
    if (cur.size() == len) {
        out.push_back(cur);
        return;
    }
    for (std::uint8_t g : letters) {
        cur.push_back(g);
        enumerate_words(letters, len, cur, out);
        cur.pop_back();
    }
}

inline std::vector<Word> words_of_length(const std::vector<std::uint8_t> &letters, std::size_t len) {
    std::vector<Word> out;
    Word cur;
    enumerate_words(letters, len, cur, out);
    return out;
}

} // namespace detail

/**
 * Decides whether target lies in the span of { w * r * v : r in rels,
 * deg(w*r*v) <= bound } over the fraction field of the coefficient ring, by
 * exact Gaussian elimination. On success the certificate is re-checkable via
 * verify_certificate. When every relation is homogeneous the span is graded,
 * so only products matching the degrees present in the target are formed.
 */
inline MembershipResult ideal_member(const NCPoly &target, const RelationSet &rels,
                                     std::size_t bound) {
    if (bound < target.degree())
        throw std::invalid_argument("ideal_member: bound smaller than target degree");
    MembershipResult res;
    res.bound = bound;
    if (target.is_zero()) {
        res.member = true;
        res.certificate = IdealCertificate{};
        return res;
    }
    const ParamSet &ps = target.params();

    // Letters that can matter: those in the target or the relations.
    std::set<std::uint8_t> letter_set = target.support();
    for (const auto &r : rels.relations())
        for (std::uint8_t g : r.support()) letter_set.insert(g);
    std::vector<std::uint8_t> letters(letter_set.begin(), letter_set.end());

    bool graded = true;
    for (const auto &r : rels.relations()) graded &= r.is_homogeneous();

    // In the graded case only span products matching target degrees matter.
    std::set<std::size_t> wanted_degrees;
    if (graded)
        for (const auto &[w, c] : target.terms()) wanted_degrees.insert(w.size());

    std::vector<detail::SpanRow> basis;
    std::vector<std::tuple<Word, std::size_t, Word>> gens; // (left, rel, right)
    std::size_t considered = 0;

    auto push_generator = [&](const Word &left, std::size_t ri, const Word &right) {
        const NCPoly &r = rels.relation(ri);
        ++considered;
        detail::SparseVec v;
        for (const auto &[w, c] : r.terms()) {
            Word full = left;
            full.insert(full.end(), w.begin(), w.end());
            full.insert(full.end(), right.begin(), right.end());
            auto it = v.find(full);
            if (it == v.end())
                v.emplace(std::move(full), RatFunc(c));
            else {
                it->second += RatFunc(c);
                if (it->second.is_zero()) v.erase(it);
            }
        }
        if (v.empty()) return;
        std::map<std::size_t, RatFunc> hist;
        hist.emplace(gens.size(), RatFunc(LaurentPoly::one(ps)));
        gens.emplace_back(left, ri, right);
        detail::reduce_against(basis, v, hist);
        if (v.empty()) return;
        // Normalize so the deglex-largest entry is 1 and record the row.
        auto lead = std::prev(v.end());
        RatFunc inv = lead->second.inv();
        detail::SpanRow row;
        row.pivot = lead->first;
        for (auto &[k, val] : v) row.vec.emplace(k, val * inv);
        for (auto &[j, val] : hist) row.hist.emplace(j, val * inv);
        basis.push_back(std::move(row));
    };

    for (std::size_t ri = 0; ri < rels.size(); ++ri) {
        const NCPoly &r = rels.relation(ri);
        if (r.is_zero()) continue;
        std::size_t rdeg = r.degree();
        if (rdeg > bound) continue;
        for (std::size_t lw = 0; lw + rdeg <= bound; ++lw) {
            for (std::size_t rw = 0; lw + rw + rdeg <= bound; ++rw) {
                if (graded && !wanted_degrees.count(lw + rw + rdeg)) continue;
                for (const Word &left : detail::words_of_length(letters, lw))
                    for (const Word &right : detail::words_of_length(letters, rw))
                        push_generator(left, ri, right);
            }
        }
    }
    res.span_size = considered;

    detail::SparseVec v;
    for (const auto &[w, c] : target.terms()) v.emplace(w, RatFunc(c));
    std::map<std::size_t, RatFunc> hist;
    detail::reduce_against(basis, v, hist);
    if (!v.empty()) return res; // not found at this bound

    IdealCertificate cert;
    for (const auto &[j, f] : hist) {
        CertTerm t;
        t.left = std::get<0>(gens[j]);
        t.relation_index = std::get<1>(gens[j]);
        t.right = std::get<2>(gens[j]);
        t.coeff = -f; // reduction subtracted rows; combination adds them
        if (!t.coeff.is_zero()) cert.combination.push_back(std::move(t));
    }
    res.member = true;
    res.certificate = std::move(cert);
    if (!verify_certificate(target, rels, *res.certificate))
        throw std::logic_error("ideal_member: produced certificate failed re-verification");
    return res;
}

// ---- two-copy (primed) derivations for the Yang-Baxterized matrix ----

struct BAlgebraRelations {
    RelationSet a_rels;       // unprimed copy, from R(T(x)T) = (T(x)T)R
    RelationSet a_prime_rels; // primed copy
    RelationSet mixed_rels;   // (b1) union (b2)
    RelationSet combined() const { return a_rels.merged(a_prime_rels).merged(mixed_rels); }
};

// Runs the four parameter-free RTT derivations for the Yang-Baxterized Bell
// matrix: T(x)T, T'(x)T', and the two mixed variants giving (b1) and (b2).
inline BAlgebraRelations derive_b_algebra(bool q_symbolic,
                                          const ParamSet &ps = algebra_params()) {
    SymMatrix r = build_bell_deformed(BellSign::plus, ps);
    if (!q_symbolic) r = r.substitute("q", LaurentPoly::one(ps));
    BAlgebraRelations out;
    out.a_rels = frt_derive(r, false, false, "TT:");
    out.a_prime_rels = frt_derive(r, true, true, "T'T':");
    out.mixed_rels =
        frt_derive(r, false, true, "b1:").merged(frt_derive(r, true, false, "b2:"));
    return out;
}

} // namespace bellalg
