#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "bellalg/linalg.hpp"

namespace bellalg {

enum class BellSign { plus, minus };
enum class OmegaFlag { plus_one = +1, minus_one = -1 };

inline const char *to_string(BellSign s) { return s == BellSign::plus ? "+" : "-"; }
inline int omega_value(OmegaFlag w) { return w == OmegaFlag::plus_one ? 1 : -1; }

// The canonical parameter set {q, x} shared by the deformed and spectral
// matrices of this module.
inline ParamSet bell_params() { return ParamSet({"q", "x"}); }

// The Bell matrix B+/B- with exact 1/sqrt2 entries, basis |00>,|01>,|10>,|11>.
inline SymMatrix build_bell(BellSign s, const ParamSet &ps = bell_params()) {
    FieldElement r = FieldElement::inv_sqrt2();
    FieldElement z = FieldElement::zero();
    FieldElement m = s == BellSign::plus ? -r : r;  // (2,1) entry
    FieldElement p = s == BellSign::plus ? r : -r;  // (1,2) entry
    return SymMatrix::from_field(ps, {{r, z, z, r},
                                      {z, r, p, z},
                                      {z, m, r, z},
                                      {-r, z, z, r}});
}

// Integer-entry Bell matrix (no 1/sqrt2 normalization).
inline SymMatrix build_bell_unnormalized(BellSign s, const ParamSet &ps = bell_params()) {
    return build_bell(s, ps) * FieldElement::sqrt2();
}

// R_omega: the q-deformation of the Bell matrix (omega = -1) or of the
// symmetric eight-vertex solution (omega = +1).
inline SymMatrix build_r_omega(OmegaFlag w, const ParamSet &ps = bell_params()) {
    int om = omega_value(w);
    SymMatrix m = SymMatrix::identity(ps, 4);
    m.at(0, 3) = LaurentPoly::monomial(ps, "q", 1);
    m.at(1, 2) = LaurentPoly::one(ps);
    m.at(2, 1) = LaurentPoly::constant(ps, FieldElement(om));
    m.at(3, 0) = LaurentPoly::monomial(ps, "q", -1, FieldElement(om));
    return m;
}

// q-deformed unnormalized B- (matches the minus branch of the spectral matrix
// at x = 0); at q = 1 this is build_bell_unnormalized(minus).
inline SymMatrix build_bell_deformed(BellSign s, const ParamSet &ps = bell_params()) {
    if (s == BellSign::plus) return build_r_omega(OmegaFlag::minus_one, ps);
    SymMatrix m = SymMatrix::identity(ps, 4);
    m.at(0, 3) = LaurentPoly::monomial(ps, "q", 1);
    m.at(1, 2) = LaurentPoly::constant(ps, FieldElement(-1));
    m.at(2, 1) = LaurentPoly::one(ps);
    m.at(3, 0) = LaurentPoly::monomial(ps, "q", -1, FieldElement(-1));
    return m;
}

/**
 * The unnormalized Yang-Baxterized family B(x) = B + 2x B^-1.
 * With symbolic_q the base matrix is the q-deformed Bell matrix, which
 * reproduces the printed spectral matrix entries (1+x on the diagonal,
 * q(1-x) and -q^-1(1-x) in the corners); with q = 1 it is the plain
 * integer-entry combination.
 */
inline SpectralFamily build_spectral_bell(BellSign s, bool symbolic_q = false) {
    ParamSet ps = bell_params();
    SymMatrix base = build_bell_deformed(s, ps);
    if (!symbolic_q) base = base.substitute("q", LaurentPoly::one(ps));
    LaurentPoly two_x = LaurentPoly::monomial(ps, "x", 1, FieldElement(2));
    SymMatrix fam = base + base.inverse() * two_x;
    return SpectralFamily{"x", fam};
}

enum class BellState { psi_plus, psi_minus, phi_plus, phi_minus };

inline const char *to_string(BellState b) {
    switch (b) {
        case BellState::psi_plus: return "psi+";
        case BellState::psi_minus: return "psi-";
        case BellState::phi_plus: return "phi+";
        case BellState::phi_minus: return "phi-";
    }
    return "?";
}

// psi+- = (|00> +- |11>)/sqrt2, phi+- = (|10> +- |01>)/sqrt2.
inline SymVector bell_state(BellState b, const ParamSet &ps = bell_params()) {
    SymVector v(ps, 4);
    FieldElement r = FieldElement::inv_sqrt2();
    switch (b) {
        case BellState::psi_plus:
            v[0] = LaurentPoly::constant(ps, r);
            v[3] = LaurentPoly::constant(ps, r);
            break;
        case BellState::psi_minus:
            v[0] = LaurentPoly::constant(ps, r);
            v[3] = LaurentPoly::constant(ps, -r);
            break;
        case BellState::phi_plus:
            v[2] = LaurentPoly::constant(ps, r);
            v[1] = LaurentPoly::constant(ps, r);
            break;
        case BellState::phi_minus:
            v[2] = LaurentPoly::constant(ps, r);
            v[1] = LaurentPoly::constant(ps, -r);
            break;
    }
    return v;
}

inline std::array<SymVector, 4> bell_states(const ParamSet &ps = bell_params()) {
    return {bell_state(BellState::psi_plus, ps), bell_state(BellState::psi_minus, ps),
            bell_state(BellState::phi_plus, ps), bell_state(BellState::phi_minus, ps)};
}

inline SymVector basis_ket(std::size_t idx, const ParamSet &ps = bell_params()) {
    if (idx > 3) throw std::invalid_argument("basis_ket: index out of range");
    SymVector v(ps, 4);
    v[idx] = LaurentPoly::one(ps);
    return v;
}

struct SignedBellState {
    BellState state;
    int sign; // +1 or -1
    std::string str() const { return (sign < 0 ? std::string("-") : std::string("")) + to_string(state); }
};

// Matches a vector against +-(Bell state); construction bug otherwise.
inline SignedBellState match_bell_state(const SymVector &v) {
    static const BellState all[4] = {BellState::psi_plus, BellState::psi_minus,
                                     BellState::phi_plus, BellState::phi_minus};
    for (BellState b : all) {
        SymVector s = bell_state(b, v.params());
        if (v == s) return {b, +1};
        if (v == -s) return {b, -1};
    }
    throw std::domain_error("match_bell_state: vector " + v.str() +
                            " is not a signed Bell state");
}

// Generation table: the action of the chosen Bell matrix on each product
// basis ket, expressed as a signed Bell state.
inline std::array<SignedBellState, 4> generation_table(BellSign s) {
    SymMatrix b = build_bell(s);
    std::array<SignedBellState, 4> out{SignedBellState{BellState::psi_plus, 1},
                                       SignedBellState{BellState::psi_plus, 1},
                                       SignedBellState{BellState::psi_plus, 1},
                                       SignedBellState{BellState::psi_plus, 1}};
    for (std::size_t k = 0; k < 4; ++k) out[k] = match_bell_state(b * basis_ket(k));
    return out;
}

struct FreeFermionReport {
    bool holds = false;
    LaurentPoly lhs, rhs; // the two pairing sides, for auditing
};

// Free-fermion condition on an eight-vertex family:
//   R^00_00 R^11_11 - R^00_11 R^11_00 = R^01_01 R^10_10 - R^01_10 R^10_01.
inline FreeFermionReport check_free_fermion(const SpectralFamily &f) {
    const SymMatrix &m = f.matrix;
    if (m.rows() != 4 || m.cols() != 4)
        throw std::invalid_argument("check_free_fermion: matrix must be 4x4");
    static const std::pair<std::size_t, std::size_t> allowed[8] = {
        {0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 3}, {1, 2}, {2, 1}, {3, 0}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            bool ok = false;
            for (auto [r, c] : allowed) ok |= (r == i && c == j);
            if (!ok && !m.at(i, j).is_zero())
                throw std::domain_error("check_free_fermion: not eight-vertex shaped, entry (" +
                                        std::to_string(i) + "," + std::to_string(j) +
                                        ") = " + m.at(i, j).str());
        }
    FreeFermionReport rep;
    rep.lhs = m.at(0, 0) * m.at(3, 3) - m.at(0, 3) * m.at(3, 0);
    rep.rhs = m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1);
    rep.holds = (rep.lhs == rep.rhs);
    return rep;
}

// ---- numeric evolution ----

struct EvolutionPoint {
    double theta = 0.0;
    double phi = 0.0;
};

using C4 = std::array<std::complex<double>, 4>;
using CMat4 = std::array<std::array<std::complex<double>, 4>, 4>;

namespace detail {

using C2x2 = std::array<std::array<std::complex<double>, 2>, 2>;

inline CMat4 kron2(const C2x2 &a, const C2x2 &b) {
    CMat4 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) r[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
    return r;
}

inline C2x2 sigma_n1(double phi) {
    std::complex<double> e(0, -(phi + M_PI) / 2);
    return {{{0.0, std::exp(e)}, {std::exp(-e), 0.0}}};
}
inline C2x2 sigma_n2(double phi) {
    std::complex<double> e(0, -phi / 2);
    return {{{0.0, std::exp(e)}, {std::exp(-e), 0.0}}};
}

} // namespace detail

inline CMat4 hamiltonian(BellSign s, double phi) {
    detail::C2x2 n1 = detail::sigma_n1(phi), n2 = detail::sigma_n2(phi);
    CMat4 h = s == BellSign::plus ? detail::kron2(n1, n2) : detail::kron2(n2, n1);
    for (auto &row : h)
        for (auto &x : row) x *= 0.5;
    return h;
}

// B(theta) = cos(pi/4 - theta) I + 2 i sin(pi/4 - theta) H.
inline CMat4 evolution_matrix(BellSign s, const EvolutionPoint &pt) {
    if (!std::isfinite(pt.theta) || !std::isfinite(pt.phi))
        throw std::invalid_argument("evolution_matrix: angles must be finite");
    CMat4 h = hamiltonian(s, pt.phi);
    double a = M_PI / 4 - pt.theta;
    std::complex<double> c = std::cos(a), si(0, 2 * std::sin(a));
    CMat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = si * h[i][j] + (i == j ? c : 0.0);
    return r;
}

inline C4 apply_mat(const CMat4 &m, const C4 &v) {
    C4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += m[i][j] * v[j];
    return r;
}

inline C4 evolve(BellSign s, const EvolutionPoint &pt, std::size_t ket) {
    if (ket > 3) throw std::invalid_argument("evolve: ket index out of range");
    C4 v{};
    v[ket] = 1.0;
    return apply_mat(evolution_matrix(s, pt), v);
}

// Closed-form action of B(theta) on a basis ket.
inline C4 evolve_closed_form(BellSign s, const EvolutionPoint &pt, std::size_t ket) {
    double a = M_PI / 4 - pt.theta;
    double c = std::cos(a), sn = std::sin(a);
    std::complex<double> eip = std::exp(std::complex<double>(0, pt.phi));
    std::complex<double> eim = std::exp(std::complex<double>(0, -pt.phi));
    double pm = s == BellSign::plus ? 1.0 : -1.0;
    C4 r{};
    switch (ket) {
        case 0: r[0] = c; r[3] = -eip * sn; break;
        case 3: r[0] = eim * sn; r[3] = c; break;
        case 1: r[1] = c; r[2] = -pm * sn; break;
        case 2: r[1] = pm * sn; r[2] = c; break;
        default: throw std::invalid_argument("evolve_closed_form: ket index out of range");
    }
    return r;
}

// Power-series exponential of i(pi/2 - 2 theta) H; consistency oracle for
// evolution_matrix.
inline CMat4 evolution_matrix_series(BellSign s, const EvolutionPoint &pt) {
    CMat4 h = hamiltonian(s, pt.phi);
    std::complex<double> z(0, M_PI / 2 - 2 * pt.theta);
    CMat4 acc{}, term{};
    for (int i = 0; i < 4; ++i) {
        acc[i][i] = 1.0;
        term[i][i] = 1.0;
    }
    for (int n = 1; n < 200; ++n) {
        CMat4 next{};
        double maxabs = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                std::complex<double> sum = 0;
                for (int k = 0; k < 4; ++k) sum += term[i][k] * h[k][j];
                next[i][j] = sum * z / static_cast<double>(n);
                maxabs = std::max(maxabs, std::abs(next[i][j]));
            }
        term = next;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) acc[i][j] += term[i][j];
        if (maxabs < 1e-18) break;
    }
    return acc;
}

} // namespace bellalg
