#pragma once

#include <random>

#include "bellalg/fmatrix.hpp"
#include "bellalg/freealg.hpp"

namespace bellalg {

// Exact-vector view of a parameter-free symbolic vector.
inline FVector fvector_from_sym(const SymVector &v) {
    FVector out(v.dim());
    for (std::size_t k = 0; k < v.dim(); ++k) out[k] = v[k].constant_value();
    return out;
}

inline FMatrix fmatrix_from_sym(const SymMatrix &m) {
    FMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j).constant_value();
    return out;
}

struct ConstraintError : std::domain_error {
    using std::domain_error::domain_error;
};

/**
 * Representation: an assignment of exact matrices to the four unprimed
 * generators, with every parameter bound in Q(i, sqrt2). The verified flag is
 * set only after check_rep passes against the defining relations.
 */
struct Representation {
    std::size_t dim = 0;
    std::array<FMatrix, 4> images; // indexed by Generator code a..d
    std::map<std::string, FieldElement> bindings;
    std::string family; // construction note for reports
    bool verified = false;

    const FMatrix &image(Generator g) const {
        if (g.primed()) throw std::invalid_argument("Representation: primed generator has no image");
        return images[g.code];
    }
};

enum class RepFamilyKind {
    degenerate_a,
    pauli_scalar,
    unit_sigma,
    distinct_eigen,
    fermion,
    b_diagonal,
};

inline const char *to_string(RepFamilyKind k) {
    switch (k) {
        case RepFamilyKind::degenerate_a: return "degenerate_a";
        case RepFamilyKind::pauli_scalar: return "pauli_scalar";
        case RepFamilyKind::unit_sigma: return "unit_sigma";
        case RepFamilyKind::distinct_eigen: return "distinct_eigen";
        case RepFamilyKind::fermion: return "fermion";
        case RepFamilyKind::b_diagonal: return "b_diagonal";
    }
    return "?";
}

inline std::optional<RepFamilyKind> family_from_string(const std::string &s) {
    for (RepFamilyKind k :
         {RepFamilyKind::degenerate_a, RepFamilyKind::pauli_scalar, RepFamilyKind::unit_sigma,
          RepFamilyKind::distinct_eigen, RepFamilyKind::fermion, RepFamilyKind::b_diagonal})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

namespace detail {

inline FieldElement need(const std::map<std::string, FieldElement> &b, const std::string &k) {
    auto it = b.find(k);
    if (it == b.end()) throw ConstraintError("missing parameter '" + k + "'");
    return it->second;
}

} // namespace detail

// The two-dimensional representation families, with their defining
// constraints enforced and b-hat derived where it is determined.
inline Representation make_family(RepFamilyKind kind, std::map<std::string, FieldElement> params) {
    using detail::need;
    Representation rep;
    rep.dim = 2;
    rep.bindings = params;
    rep.family = to_string(kind);
    const FieldElement I1 = FieldElement::one(), Z = FieldElement::zero();
    switch (kind) {
        case RepFamilyKind::degenerate_a: {
            FieldElement l = need(params, "lambda"), al = need(params, "alpha");
            FieldElement be = need(params, "beta"), ga = need(params, "gamma");
            FieldElement c1 = need(params, "c1"), c2 = need(params, "c2"), c3 = need(params, "c3");
            if (l.is_zero()) throw ConstraintError("degenerate_a requires lambda != 0");
            if (al * al + be * ga != l * l)
                throw ConstraintError("degenerate_a requires alpha^2 + beta*gamma = lambda^2");
            if (FieldElement(2) * c1 * al != -(c3 * be) - c2 * ga)
                throw ConstraintError("degenerate_a requires 2*c1*alpha = -c3*beta - c2*gamma");
            FMatrix a = FMatrix::from_rows({{l, Z}, {Z, l}});
            FMatrix d = FMatrix::from_rows({{al, be}, {ga, -al}});
            FMatrix c = FMatrix::from_rows({{c1, c2}, {c3, -c1}});
            FMatrix b = (d * c) * l.inv();
            rep.images = {a, b, c, d};
            break;
        }
        case RepFamilyKind::pauli_scalar: {
            FieldElement l = need(params, "lambda"), m = need(params, "mu");
            FMatrix a = FMatrix::from_rows({{l, Z}, {Z, l}});
            FMatrix d = FMatrix::from_rows({{Z, l}, {l, Z}});
            FMatrix b = FMatrix::from_rows({{Z, -m}, {m, Z}});  // -i mu sigma_y
            FMatrix c = FMatrix::from_rows({{m, Z}, {Z, -m}});  // mu sigma_z
            rep.images = {a, b, c, d};
            break;
        }
        case RepFamilyKind::unit_sigma: {
            FMatrix a = FMatrix::identity(2);
            FMatrix d = FMatrix::from_rows({{I1, Z}, {Z, -I1}});
            FMatrix b = FMatrix::from_rows({{Z, I1}, {-I1, Z}}); // i sigma_y
            FMatrix c = FMatrix::from_rows({{Z, I1}, {I1, Z}});  // sigma_x
            rep.images = {a, b, c, d};
            break;
        }
        case RepFamilyKind::distinct_eigen: {
            FieldElement l1 = need(params, "lambda1"), l2 = need(params, "lambda2");
            FieldElement c2 = need(params, "c2"), c3 = need(params, "c3");
            FieldElement eps = need(params, "eps");
            if (l1 == l2) throw ConstraintError("distinct_eigen requires lambda1 != lambda2");
            if (eps * eps != I1) throw ConstraintError("distinct_eigen requires eps^2 = 1");
            FMatrix a = FMatrix::from_rows({{l1, Z}, {Z, l2}});
            FMatrix d = FMatrix::from_rows({{eps * l1, Z}, {Z, -(eps * l2)}});
            FMatrix b = FMatrix::from_rows({{Z, eps * c2}, {-(eps * c3), Z}});
            FMatrix c = FMatrix::from_rows({{Z, c2}, {c3, Z}});
            rep.images = {a, b, c, d};
            break;
        }
        case RepFamilyKind::fermion: {
            FieldElement l1 = need(params, "lambda1"), l2 = need(params, "lambda2");
            FMatrix sp = FMatrix::from_rows({{Z, I1}, {Z, Z}});
            FMatrix a = FMatrix::from_rows({{l1, Z}, {Z, l2}});
            FMatrix d = FMatrix::from_rows({{l1, Z}, {Z, -l2}});
            rep.images = {a, sp, sp, d};
            break;
        }
        case RepFamilyKind::b_diagonal: {
            FieldElement p = need(params, "p"), al = need(params, "alpha"), be = need(params, "beta");
            if (p.is_zero()) throw ConstraintError("b_diagonal requires p != 0");
            FieldElement p2 = p * p;
            FMatrix b = FMatrix::from_rows({{p, Z}, {Z, -p}});
            FMatrix c = FMatrix::from_rows({{Z, -p2}, {I1, Z}});
            FMatrix a = FMatrix::from_rows({{al, p2 * be}, {be, al}});
            FMatrix d = FMatrix::from_rows({{p * be, p * al}, {p.inv() * al, p * be}});
            rep.images = {a, b, c, d};
            break;
        }
    }
    return rep;
}

struct RelationViolation {
    std::string label;
    std::string relation;
    FMatrix residual;
};

struct CheckResult {
    bool ok = true;
    std::vector<RelationViolation> violations;
};

// Substitute the images into every relation; ok iff all residuals vanish
// exactly. Coefficients may mention parameters only if the bindings cover
// them.
inline CheckResult check_rep(const Representation &rep, const RelationSet &rels) {
    CheckResult out;
    const ParamSet &ps = rels.params();
    std::map<std::string, LaurentPoly> binds;
    for (const auto &[name, val] : rep.bindings)
        if (ps.index_of(name) >= 0) binds.emplace(name, LaurentPoly::constant(ps, val));
    for (std::size_t k = 0; k < rels.size(); ++k) {
        const NCPoly &r = rels.relation(k);
        FMatrix acc(rep.dim, rep.dim);
        for (const auto &[w, coeff] : r.terms()) {
            LaurentPoly c = coeff.substitute(binds);
            if (!c.is_constant()) {
                auto used = c.used_params();
                throw std::domain_error("check_rep: unbound parameter '" +
                                        (used.empty() ? "?" : used.front()) + "' in relation " +
                                        r.str());
            }
            FMatrix prod = FMatrix::identity(rep.dim);
            for (std::uint8_t g : w) {
                if (g >= 4)
                    throw std::domain_error("check_rep: relation uses primed generator " +
                                            Generator{g}.str() + "; representation has none");
                prod = prod * rep.images[g];
            }
            acc = acc + prod * c.constant_value();
        }
        if (!acc.is_zero()) {
            out.ok = false;
            out.violations.push_back({rels.label(k), r.str(), acc});
        }
    }
    return out;
}

// The defining relations every representation must satisfy: the rescaled
// six relations plus the two excluded quadratics [F1], [F2].
inline RelationSet a_minus_one_check_set(const ParamSet &ps = algebra_params()) {
    RelationSet rs = a_omega_rescaled(OmegaFlag::minus_one, ps);
    rs.add(f1_rescaled(OmegaFlag::minus_one, ps), "F1");
    rs.add(f2_rescaled(OmegaFlag::minus_one, ps), "F2");
    return rs;
}

// Run check_rep against the defining relations and mark the rep verified.
inline CheckResult verify(Representation &rep) {
    CheckResult res = check_rep(rep, a_minus_one_check_set());
    rep.verified = res.ok;
    return res;
}

namespace detail {

inline FMatrix fkron(const FMatrix &a, const FMatrix &b) {
    FMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
        }
    return r;
}

} // namespace detail

// Tensor representation through the coproduct formulas
//   D(a) = a(x)a' + b(x)c',   D(b) = a(x)b' + b(x)d',
//   D(c) = c(x)a' + d(x)c',   D(d) = c(x)b' + d(x)d'.
// Both inputs must be verified; the result is checked before it is returned.
inline Representation coproduct_rep(const Representation &r1, const Representation &r2) {
    if (!r1.verified || !r2.verified)
        throw std::domain_error("coproduct_rep: both inputs must be verified representations");
    using detail::fkron;
    const FMatrix &a = r1.images[0], &b = r1.images[1], &c = r1.images[2], &d = r1.images[3];
    const FMatrix &ap = r2.images[0], &bp = r2.images[1], &cp = r2.images[2], &dp = r2.images[3];
    Representation out;
    out.dim = r1.dim * r2.dim;
    out.images[0] = fkron(a, ap) + fkron(b, cp);
    out.images[1] = fkron(a, bp) + fkron(b, dp);
    out.images[2] = fkron(c, ap) + fkron(d, cp);
    out.images[3] = fkron(c, bp) + fkron(d, dp);
    out.family = "coproduct(" + r1.family + ", " + r2.family + ")";
    for (const auto &[k, v] : r1.bindings) out.bindings[k] = v;
    for (const auto &[k, v] : r2.bindings) out.bindings[k + "'"] = v;
    CheckResult chk = check_rep(out, a_minus_one_check_set());
    if (!chk.ok)
        throw std::logic_error("coproduct_rep: coproduct images violate the defining relations");
    out.verified = true;
    return out;
}

/**
 * Subspace: an exact subspace held as a canonical reduced-echelon basis.
 */
class Subspace {
  public:
    Subspace() = default;
    Subspace(std::size_t ambient, std::vector<FVector> vectors) : ambient_(ambient) {
        for (const auto &v : vectors)
            if (v.size() != ambient_) throw std::invalid_argument("Subspace: wrong vector size");
        basis_ = std::move(vectors);
        pivots_ = rref(basis_);
    }
    static Subspace zero(std::size_t ambient) { return Subspace(ambient, {}); }
    static Subspace full(std::size_t ambient) {
        std::vector<FVector> rows;
        for (std::size_t k = 0; k < ambient; ++k) {
            FVector v(ambient);
            v[k] = FieldElement::one();
            rows.push_back(std::move(v));
        }
        return Subspace(ambient, std::move(rows));
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<FVector> &basis() const { return basis_; }
    const std::vector<std::size_t> &pivots() const { return pivots_; }

    bool operator==(const Subspace &o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
    bool operator!=(const Subspace &o) const { return !(*this == o); }

    // Deterministic order: dimension, then pivot columns, then entries.
    bool operator<(const Subspace &o) const {
        if (dim() != o.dim()) return dim() < o.dim();
        if (pivots_ != o.pivots_) return pivots_ < o.pivots_;
        return basis_ < o.basis_;
    }

    bool contains(const FVector &v) const {
        FVector r = v;
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            const FieldElement &x = r[pivots_[k]];
            if (!x.is_zero()) r = fvec_sub(r, fvec_scale(basis_[k], x));
        }
        return fvec_is_zero(r);
    }
    bool contains(const Subspace &o) const {
        for (const auto &v : o.basis_)
            if (!contains(v)) return false;
        return true;
    }

    Subspace sum(const Subspace &o) const {
        std::vector<FVector> rows = basis_;
        rows.insert(rows.end(), o.basis_.begin(), o.basis_.end());
        return Subspace(ambient_, std::move(rows));
    }

    Subspace intersect(const Subspace &o) const {
        if (dim() == 0 || o.dim() == 0) return zero(ambient_);
        // Solve alpha*U = beta*W via the kernel of [U^T | -W^T].
        FMatrix m(ambient_, dim() + o.dim());
        for (std::size_t c = 0; c < dim(); ++c)
            for (std::size_t r = 0; r < ambient_; ++r) m.at(r, c) = basis_[c][r];
        for (std::size_t c = 0; c < o.dim(); ++c)
            for (std::size_t r = 0; r < ambient_; ++r) m.at(r, dim() + c) = -o.basis_[c][r];
        std::vector<FVector> vecs;
        for (const FVector &k : kernel(m)) {
            FVector x(ambient_);
            for (std::size_t c = 0; c < dim(); ++c) x = fvec_add(x, fvec_scale(basis_[c], k[c]));
            if (!fvec_is_zero(x)) vecs.push_back(std::move(x));
        }
        return Subspace(ambient_, std::move(vecs));
    }

    std::string str() const {
        std::string s = "span{";
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            if (k) s += ", ";
            s += "(";
            for (std::size_t j = 0; j < ambient_; ++j)
                s += (j ? ", " : "") + basis_[k][j].str();
            s += ")";
        }
        return s + "}";
    }

  private:
    std::size_t ambient_ = 0;
    std::vector<FVector> basis_;  // reduced echelon rows
    std::vector<std::size_t> pivots_;
};

// Smallest subspace containing the seeds and closed under all four images.
inline Subspace invariant_closure(const Representation &rep, const std::vector<FVector> &seeds) {
    Subspace s(rep.dim, seeds);
    for (;;) {
        std::vector<FVector> next = s.basis();
        bool grew = false;
        for (const auto &img : rep.images)
            for (const auto &v : s.basis()) {
                FVector w = img * v;
                if (!s.contains(w)) {
                    next.push_back(std::move(w));
                    grew = true;
                }
            }
        if (!grew) return s;
        s = Subspace(rep.dim, std::move(next));
    }
}

inline bool is_invariant(const Representation &rep, const Subspace &s) {
    for (const auto &img : rep.images)
        for (const auto &v : s.basis())
            if (!s.contains(img * v)) return false;
    return true;
}

struct LatticeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invariant-subspace lattice: closures of eigenspace seeds (and their
// pairwise intersections) and of the standard basis vectors, closed under
// sum and intersection to a fixpoint. Hard cap guards against blowup.
inline std::vector<Subspace> invariant_lattice(const Representation &rep, std::size_t cap = 64) {
    std::set<Subspace> members;
    members.insert(Subspace::zero(rep.dim));
    members.insert(Subspace::full(rep.dim));
    auto add = [&](const Subspace &s) {
        members.insert(s);
        if (members.size() > cap)
            throw LatticeError("invariant_lattice: more than " + std::to_string(cap) +
                               " distinct invariant subspaces; raise the cap");
    };

    std::vector<Subspace> eigenspaces;
    for (const auto &img : rep.images) {
        RootReport rr = find_roots(char_poly(img));
        for (const auto &[lambda, mult] : rr.roots) {
            FMatrix shifted = img - FMatrix::identity(rep.dim) * lambda;
            Subspace es(rep.dim, kernel(shifted));
            eigenspaces.push_back(es);
            add(invariant_closure(rep, es.basis()));
        }
    }
    for (std::size_t i = 0; i < eigenspaces.size(); ++i)
        for (std::size_t j = i + 1; j < eigenspaces.size(); ++j) {
            Subspace cap_ij = eigenspaces[i].intersect(eigenspaces[j]);
            if (cap_ij.dim() > 0) add(invariant_closure(rep, cap_ij.basis()));
        }
    for (std::size_t k = 0; k < rep.dim; ++k) {
        FVector e(rep.dim);
        e[k] = FieldElement::one();
        add(invariant_closure(rep, {e}));
    }

    // Fixpoint under sum and intersection.
    for (;;) {
        std::vector<Subspace> cur(members.begin(), members.end());
        std::size_t before = members.size();
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                add(cur[i].sum(cur[j]));
                add(cur[i].intersect(cur[j]));
            }
        if (members.size() == before) break;
    }
    return std::vector<Subspace>(members.begin(), members.end());
}

// Quotient action of the representation on W/V (V < W invariant subspaces).
// Returns the quotient images and the chosen lift vectors.
inline std::pair<std::array<FMatrix, 4>, std::vector<FVector>>
quotient_action(const Representation &rep, const Subspace &v, const Subspace &w) {
    std::vector<FVector> lifts;
    Subspace span = v;
    for (const auto &vec : w.basis()) {
        if (span.contains(vec)) continue;
        lifts.push_back(vec);
        std::vector<FVector> rows = span.basis();
        rows.push_back(vec);
        span = Subspace(rep.dim, std::move(rows));
    }
    std::size_t k = lifts.size();
    // Coordinates: solve [Vbasis | lifts] x = target, read the lift part.
    FMatrix basis_mat(rep.dim, v.dim() + k);
    for (std::size_t c = 0; c < v.dim(); ++c)
        for (std::size_t r = 0; r < rep.dim; ++r) basis_mat.at(r, c) = v.basis()[c][r];
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < rep.dim; ++r) basis_mat.at(r, v.dim() + c) = lifts[c][r];
    std::array<FMatrix, 4> q{FMatrix(k, k), FMatrix(k, k), FMatrix(k, k), FMatrix(k, k)};
    for (std::size_t g = 0; g < 4; ++g)
        for (std::size_t j = 0; j < k; ++j) {
            FVector img = rep.images[g] * lifts[j];
            auto x = solve(basis_mat, img);
            if (!x) throw std::logic_error("quotient_action: image left the subspace");
            for (std::size_t i = 0; i < k; ++i) q[g].at(i, j) = (*x)[v.dim() + i];
        }
    return {q, lifts};
}

namespace detail {

inline Representation rep_from_images(std::array<FMatrix, 4> images, std::size_t dim) {
    Representation r;
    r.dim = dim;
    r.images = std::move(images);
    return r;
}

// Irreducibility of a small quotient representation: reducible iff some
// closure of a basis vector or of an exact eigenline (of an image or of the
// transposed action, catching codimension-1 invariants) is proper.
inline bool images_irreducible(const std::array<FMatrix, 4> &images, std::size_t dim) {
    if (dim <= 1) return true;
    Representation rep = rep_from_images(images, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        FVector e(dim);
        e[k] = FieldElement::one();
        if (invariant_closure(rep, {e}).dim() < dim) return false;
    }
    std::array<FMatrix, 4> duals;
    for (std::size_t g = 0; g < 4; ++g) duals[g] = images[g].transpose();
    Representation dual = rep_from_images(duals, dim);
    for (const Representation *r : {&rep, &dual}) {
        for (const auto &img : r->images) {
            RootReport rr = find_roots(char_poly(img));
            for (const auto &[lambda, mult] : rr.roots) {
                FMatrix shifted = img - FMatrix::identity(dim) * lambda;
                for (const FVector &v : kernel(shifted))
                    if (invariant_closure(*r, {v}).dim() < dim) return false;
            }
        }
    }
    return true;
}

} // namespace detail

inline bool quotient_irreducible(const Representation &rep, const Subspace &v, const Subspace &w) {
    auto [q, lifts] = quotient_action(rep, v, w);
    return detail::images_irreducible(q, lifts.size());
}

struct CompositionSeries {
    std::vector<Subspace> chain; // ascending, {0} .. full
    std::vector<std::string> quotient_verdicts;
    std::vector<std::vector<Subspace>> alternatives; // other maximal chains
};

struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Composition series from the invariant-subspace lattice: depth-first search
// over minimal extensions with irreducible quotients. The primary chain takes
// the lexicographically smallest pivot basis at every step; all other
// complete chains (up to a small cap) are reported as alternatives.
inline CompositionSeries composition_series(const Representation &rep) {
    std::vector<Subspace> lattice = invariant_lattice(rep);
    Subspace full = Subspace::full(rep.dim);
    std::vector<std::vector<Subspace>> chains;
    std::vector<Subspace> path{Subspace::zero(rep.dim)};
    const std::size_t chain_cap = 8;

    // Takes its argument by value: path reallocates during recursion.
    std::function<void(Subspace)> dfs = [&](Subspace cur) {
        if (chains.size() >= chain_cap) return;
        if (cur == full) {
            chains.push_back(path);
            return;
        }
        // Minimal strict extensions within the lattice.
        std::vector<Subspace> cands;
        for (const Subspace &w : lattice) {
            if (w.dim() <= cur.dim() || !w.contains(cur) || w == cur) continue;
            bool minimal = true;
            for (const Subspace &x : lattice)
                if (x.dim() > cur.dim() && x.dim() < w.dim() && x.contains(cur) && w.contains(x) &&
                    x != cur && x != w) {
                    minimal = false;
                    break;
                }
            if (minimal) cands.push_back(w);
        }
        std::sort(cands.begin(), cands.end());
        for (const Subspace &w : cands) {
            if (!quotient_irreducible(rep, cur, w)) continue;
            path.push_back(w);
            dfs(w);
            path.pop_back();
        }
    };
    dfs(path.front());

    if (chains.empty())
        throw SeriesError("composition_series: no chain with irreducible quotients found");
    CompositionSeries out;
    out.chain = chains.front();
    for (std::size_t k = 0; k + 1 < out.chain.size(); ++k) out.quotient_verdicts.push_back("irreducible");
    for (std::size_t k = 1; k < chains.size(); ++k) out.alternatives.push_back(chains[k]);
    return out;
}

// ---- direct-sum decomposition via the commutant ----

struct DecomposeResult {
    bool decomposable = false;
    bool inconclusive = false;
    std::vector<Subspace> summands;   // invariant, pairwise independent, sum = full
    std::size_t commutant_dim = 0;
    std::size_t radical_dim = 0;      // of the commutant
    std::string note;
};

// Basis of the commutant { X : X image_g = image_g X for all g }.
inline std::vector<FMatrix> commutant_basis(const Representation &rep) {
    std::size_t n = rep.dim;
    FMatrix sys(4 * n * n, n * n);
    for (std::size_t g = 0; g < 4; ++g) {
        const FMatrix &A = rep.images[g];
        // (X A - A X)[i][j] = sum_k X[i][k] A[k][j] - A[i][k] X[k][j]
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t row = g * n * n + i * n + j;
                for (std::size_t k = 0; k < n; ++k) {
                    sys.at(row, i * n + k) += A.at(k, j);
                    sys.at(row, k * n + j) -= A.at(i, k);
                }
            }
    }
    std::vector<FMatrix> basis;
    for (const FVector &v : kernel(sys)) {
        FMatrix x(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) x.at(i, j) = v[i * n + j];
        basis.push_back(std::move(x));
    }
    return basis;
}

namespace detail {

inline Subspace column_space(const FMatrix &m) {
    std::vector<FVector> cols;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        FVector v(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m.at(r, c);
        cols.push_back(std::move(v));
    }
    return Subspace(m.rows(), std::move(cols));
}

// Restriction of the representation to an invariant subspace, with the basis
// matrix that lifts restricted coordinates back to the ambient space.
inline std::pair<Representation, FMatrix> restrict_rep(const Representation &rep,
                                                       const Subspace &s) {
    std::size_t k = s.dim(), n = rep.dim;
    FMatrix b(n, k);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < n; ++r) b.at(r, c) = s.basis()[c][r];
    Representation out;
    out.dim = k;
    out.bindings = rep.bindings;
    out.family = rep.family + "|sub";
    for (std::size_t g = 0; g < 4; ++g) {
        FMatrix m(k, k);
        for (std::size_t c = 0; c < k; ++c) {
            FVector img = rep.images[g] * s.basis()[c];
            auto x = solve(b, img);
            if (!x) throw std::logic_error("restrict_rep: subspace is not invariant");
            for (std::size_t r = 0; r < k; ++r) m.at(r, c) = (*x)[r];
        }
        out.images[g] = m;
    }
    out.verified = rep.verified;
    return {out, b};
}

inline Subspace lift_subspace(const Subspace &sub, const FMatrix &basis) {
    std::vector<FVector> vecs;
    for (const auto &v : sub.basis()) {
        FVector x(basis.rows());
        for (std::size_t c = 0; c < basis.cols(); ++c)
            for (std::size_t r = 0; r < basis.rows(); ++r) x[r] += basis.at(r, c) * v[c];
        vecs.push_back(std::move(x));
    }
    return Subspace(basis.rows(), std::move(vecs));
}

} // namespace detail

/**
 * Direct-sum decomposition. The commutant is computed exactly; its radical
 * (trace-form kernel, valid in characteristic zero) certifies
 * indecomposability when the semisimple part is one-dimensional. Otherwise a
 * generic commutant element is split through its exact eigenprojections;
 * random retries are driven by the caller's seed for reproducibility.
 */
inline DecomposeResult decompose(const Representation &rep, std::uint64_t seed = 12345,
                                 int retries = 8) {
    DecomposeResult out;
    std::vector<FMatrix> comm = commutant_basis(rep);
    out.commutant_dim = comm.size();
    if (comm.size() <= 1) {
        out.note = "commutant is scalar";
        return out;
    }
    // Radical of the commutant as the kernel of the trace form.
    FMatrix gram(comm.size(), comm.size());
    for (std::size_t i = 0; i < comm.size(); ++i)
        for (std::size_t j = 0; j < comm.size(); ++j) gram.at(i, j) = (comm[i] * comm[j]).trace();
    out.radical_dim = kernel(gram).size();
    std::size_t ss_dim = comm.size() - out.radical_dim;
    if (ss_dim <= 1) {
        out.note = "commutant is local (semisimple part is scalar)";
        return out;
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (int attempt = 0; attempt < retries; ++attempt) {
        FMatrix z(rep.dim, rep.dim);
        for (const FMatrix &x : comm) z = z + x * FieldElement(coeff(rng));
        FPoly mp = min_poly(z);
        RootReport rr = find_roots(mp);
        if (!rr.split || rr.roots.size() < 2) continue;
        // Exact spectral projectors of z (semisimple part drives the split).
        std::vector<Subspace> pieces;
        bool good = true;
        for (const auto &[lambda, mult] : rr.roots) {
            // Generalized eigenspace: kernel of (z - lambda)^mult.
            FMatrix shifted = z - FMatrix::identity(rep.dim) * lambda;
            Subspace ker(rep.dim, kernel(shifted.pow(static_cast<unsigned>(mult))));
            if (ker.dim() == 0 || ker.dim() == rep.dim) {
                good = false;
                break;
            }
            pieces.push_back(ker);
        }
        if (!good || pieces.size() < 2) continue;
        std::size_t total = 0;
        for (const auto &p : pieces) total += p.dim();
        if (total != rep.dim) continue;
        for (const auto &p : pieces)
            if (!is_invariant(rep, p)) good = false;
        if (!good) continue;

        // Recurse into each invariant piece.
        out.decomposable = true;
        for (const Subspace &p : pieces) {
            auto [sub, basis] = detail::restrict_rep(rep, p);
            DecomposeResult inner = decompose(sub, seed + 1 + attempt, retries);
            if (inner.decomposable) {
                for (const Subspace &s : inner.summands)
                    out.summands.push_back(detail::lift_subspace(s, basis));
            } else {
                out.summands.push_back(p);
            }
        }
        std::sort(out.summands.begin(), out.summands.end());
        return out;
    }
    out.inconclusive = true;
    out.note = "no splitting element found within the retry budget";
    return out;
}

// ---- eigen analysis ----

struct EigenData {
    FieldElement eigenvalue;
    Subspace eigenvectors;
};

struct EigenError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::vector<EigenData> eigen_analysis(const Representation &rep, Generator g) {
    const FMatrix &a = rep.image(g);
    FPoly cp = char_poly(a);
    RootReport rr = find_roots(cp);
    if (!rr.split)
        throw EigenError("eigen_analysis: characteristic polynomial does not split over "
                         "Q(i,sqrt2); unfactored part: " +
                         poly_str(rr.remaining));
    std::vector<EigenData> out;
    for (const auto &[lambda, mult] : rr.roots) {
        FMatrix shifted = a - FMatrix::identity(rep.dim) * lambda;
        out.push_back({lambda, Subspace(rep.dim, kernel(shifted))});
    }
    return out;
}

// ---- ladder checks ----

struct LadderReport {
    bool ok = true;
    std::vector<std::string> failures;
};

enum class LadderKind { phi, psi };

// Verifies the printed actions on |phi_n> = l'^n |01> - l^n |10> (and, when
// l l' = 1, on |psi_n> = n|00> + |11>) for n = 1..n_max, exactly.
inline LadderReport ladder_check(const Representation &rep, LadderKind kind, int n_max,
                                 const FieldElement &lambda, const FieldElement &lambda_prime) {
    if (rep.dim != 4) throw std::invalid_argument("ladder_check: requires a 4-dimensional representation");
    LadderReport rep_out;
    auto fail = [&](const std::string &m) {
        rep_out.ok = false;
        rep_out.failures.push_back(m);
    };
    const FMatrix &A = rep.images[0], &B = rep.images[1], &C = rep.images[2], &D = rep.images[3];
    auto phi = [&](int n) {
        FVector v(4);
        v[1] = lambda_prime.pow(n);
        v[2] = -lambda.pow(n);
        return v;
    };
    if (kind == LadderKind::phi) {
        for (int n = 1; n <= n_max; ++n) {
            if (A * phi(n) != phi(n + 1)) fail("a|phi_" + std::to_string(n) + "> != |phi_" + std::to_string(n + 1) + ">");
            if (D * phi(n) != fvec_scale(phi(n + 1), FieldElement(-1)))
                fail("d|phi_" + std::to_string(n) + "> != -|phi_" + std::to_string(n + 1) + ">");
            FVector want(4);
            want[0] = lambda_prime.pow(n) - lambda.pow(n);
            if (B * phi(n) != want) fail("b|phi_" + std::to_string(n) + "> mismatch");
            if (C * phi(n) != want) fail("c|phi_" + std::to_string(n) + "> mismatch");
        }
        return rep_out;
    }
    if (lambda * lambda_prime != FieldElement::one())
        throw ConstraintError("ladder_check(psi): bindings must satisfy lambda*lambda' = 1");
    auto psi = [&](int n) {
        FVector v(4);
        v[0] = FieldElement(n);
        v[3] = FieldElement::one();
        return v;
    };
    for (int n = 1; n <= n_max; ++n) {
        if (A * psi(n) != psi(n + 1)) fail("a|psi_" + std::to_string(n) + "> != |psi_" + std::to_string(n + 1) + ">");
        if (D * psi(n) != psi(n + 1)) fail("d|psi_" + std::to_string(n) + "> != |psi_" + std::to_string(n + 1) + ">");
        if (B * psi(n) != fvec_scale(phi(1), FieldElement(-1)))
            fail("b|psi_" + std::to_string(n) + "> != -|phi_1>");
        if (C * psi(n) != phi(1)) fail("c|psi_" + std::to_string(n) + "> != |phi_1>");
    }
    return rep_out;
}

// ---- entanglement ----

struct SchmidtData {
    double c1 = 0, c2 = 0; // descending
    bool maximally_entangled = false;
};

inline SchmidtData schmidt(const FVector &state) {
    if (state.size() != 4) throw std::invalid_argument("schmidt: state must have dimension 4");
    if (fvec_is_zero(state)) throw std::domain_error("schmidt: zero state");
    std::complex<double> m[2][2] = {{state[0].to_complex(), state[1].to_complex()},
                                    {state[2].to_complex(), state[3].to_complex()}};
    double norm2 = 0;
    for (auto &row : m)
        for (auto &x : row) norm2 += std::norm(x);
    // Singular values of the normalized 2x2 coefficient matrix.
    double t = 0;
    std::complex<double> det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / norm2;
    t = 1.0; // trace of M M^dag after normalization
    double disc = std::max(0.0, t * t - 4 * std::norm(det));
    double l1 = (t + std::sqrt(disc)) / 2, l2 = (t - std::sqrt(disc)) / 2;
    SchmidtData out;
    out.c1 = std::sqrt(std::max(0.0, l1));
    out.c2 = std::sqrt(std::max(0.0, l2));
    const double inv_sqrt2 = 0.70710678118654752440;
    out.maximally_entangled =
        std::abs(out.c1 - inv_sqrt2) < 1e-12 && std::abs(out.c2 - inv_sqrt2) < 1e-12;
    return out;
}

// Exact local unitary U with (1_2 (x) U)|psi+> = state in the first-leg
// convention, i.e. U = sqrt2 * [coefficient matrix] of the normalized state.
// Requires a maximally entangled input; U is verified unitary exactly.
inline FMatrix local_unitary_from_bell(const FVector &state) {
    SchmidtData sd = schmidt(state);
    if (!sd.maximally_entangled)
        throw std::domain_error("local_unitary_from_bell: state is not maximally entangled");
    FieldElement nrm2;
    for (const FieldElement &x : state) nrm2 += x.conj() * x;
    auto nrm = field_sqrt(nrm2);
    if (!nrm)
        throw std::domain_error(
            "local_unitary_from_bell: the state's norm has no square root in Q(i,sqrt2)");
    // Pick the positive real root: a + b sqrt2 > 0 test on the coordinates.
    const Rational &a = nrm->coord(0), &b = nrm->coord(2);
    bool positive = (a >= 0 && b >= 0) ? !nrm->is_zero()
                    : (a > 0 ? a * a > 2 * b * b : 2 * b * b > a * a && b > 0);
    if (!positive) *nrm = -*nrm;
    FVector v = fvec_scale(state, nrm->inv());
    FieldElement r2 = FieldElement::sqrt2();
    FMatrix u = FMatrix::from_rows({{v[0] * r2, v[1] * r2}, {v[2] * r2, v[3] * r2}});
    if (u.adjoint() * u != FMatrix::identity(2))
        throw std::logic_error("local_unitary_from_bell: produced matrix is not exactly unitary");
    return u;
}

// The d-hat eigenvectors of the second coproduct example, as exact vectors
// chi1, chi2, tau1, tau2 in the |ij> basis. The labels follow the action
// table (d: chi1 -> z chi1, chi2 -> -z chi2, tau1 -> -zbar tau1,
// tau2 -> zbar tau2; b, c exchange chi_k and tau_k), which fixes
//   chi1 = (|psi+> + i|phi+>)/sqrt2,  chi2 = (|psi-> + i|phi->)/sqrt2,
//   tau1 = (|psi-> - i|phi->)/sqrt2,  tau2 = (|psi+> - i|phi+>)/sqrt2.
inline std::array<FVector, 4> chi_tau_states() {
    FieldElement h(Rational(1, 2));
    FieldElement ih = FieldElement::i() * h;
    FVector chi1{h, ih, ih, h};
    FVector chi2{h, -ih, ih, -h};
    FVector tau1{h, ih, -ih, -h};
    FVector tau2{h, -ih, -ih, h};
    return {chi1, chi2, tau1, tau2};
}

} // namespace bellalg
