// Acceptance suite: runs every criterion end to end and prints one verdict
// line each. Exits nonzero if any criterion fails.

#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "bellalg/json_io.hpp"

using namespace bellalg;

namespace {

int g_failed = 0;

void verdict(int number, bool pass, const std::string &name, const std::string &note = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << name;
    if (!note.empty()) std::cout << " -- " << note;
    std::cout << std::endl;
    if (!pass) ++g_failed;
}

FieldElement fe(const char *s) { return parse_field_element(s); }

RelationSet from_lines(const ParamSet &ps, std::initializer_list<const char *> lines) {
    RelationSet rs(ps);
    for (const char *l : lines) rs.add(parse_ncpoly(l, ps), "");
    return rs;
}

// ---- criterion 1 ----
void criterion_1() {
    ParamSet ps = bell_params();
    bool ok = check_braid_ybe(build_bell(BellSign::plus, ps)).holds &&
              check_braid_ybe(build_bell(BellSign::minus, ps)).holds &&
              check_braid_ybe(build_r_omega(OmegaFlag::plus_one, ps)).holds &&
              check_braid_ybe(build_r_omega(OmegaFlag::minus_one, ps)).holds &&
              check_braid_ybe(swap_matrix(ps)).holds;
    SymMatrix bad = build_bell(BellSign::plus, ps);
    bad.at(0, 3) = LaurentPoly::constant(ps, FieldElement::sqrt2()); // 2/sqrt2
    YbeResult pert = check_braid_ybe(bad);
    ok = ok && !pert.holds && pert.witness.has_value();
    verdict(1, ok, "braided YBE for B+, B-, R_+1, R_-1 (symbolic q), swap; perturbation fails",
            "tolerance: exact zero");
}

// ---- criterion 2 ----
void criterion_2() {
    ParamSet ps = bell_params();
    bool ok = true;
    for (BellSign s : {BellSign::plus, BellSign::minus}) {
        SymMatrix b = build_bell(s, ps);
        SymMatrix id = SymMatrix::identity(ps, 4);
        ok = ok && b.pow(4) == id * FieldElement(-1);
        ok = ok && b.pow(8) == id;
        ok = ok && (id + b.pow(2)) * FieldElement::inv_sqrt2() == b;
        ok = ok && b.adjoint() * b == id;
    }
    verdict(2, ok, "B^4 = -I, B^8 = I, B = (I+B^2)/sqrt2, B+B = I (exact, both signs)");
}

// ---- criterion 3 ----
void criterion_3() {
    // The reference generation table, by ket index:
    //   B+: 00->psi-, 01->phi-, 10->phi+, 11->psi+
    //   B-: 00->phi-, 01->psi+, 10->-psi-, 11->phi+
    static const char *kets[4] = {"00", "01", "10", "11"};
    bool ok = true;
    std::ostringstream table;
    for (int s = 0; s < 2; ++s) {
        BellSign sign = s == 0 ? BellSign::plus : BellSign::minus;
        auto computed = generation_table(sign);
        std::string expect_by_ket[4];
        if (s == 0) {
            expect_by_ket[0] = "psi-";
            expect_by_ket[1] = "phi-";
            expect_by_ket[2] = "phi+";
            expect_by_ket[3] = "psi+";
        } else {
            expect_by_ket[0] = "phi-";
            expect_by_ket[1] = "psi+";
            expect_by_ket[2] = "-psi-";
            expect_by_ket[3] = "phi+";
        }
        for (int k = 0; k < 4; ++k) {
            std::string got = computed[static_cast<std::size_t>(k)].str();
            bool match = got == expect_by_ket[k];
            ok = ok && match;
            table << "  B" << to_string(sign) << "|" << kets[k] << ">: computed " << got
                  << ", reference " << expect_by_ket[k] << (match ? "" : "   <-- MISMATCH") << "\n";
        }
    }
    std::cout << table.str();
    verdict(3, ok, "generation table matches the reference signed assignments",
            ok ? "" :
               "computed from the Bell matrices and states themselves; the reference "
               "table is inconsistent with them (see README, Known discrepancies)");
}

// ---- criterion 4 ----
void criterion_4() {
    ParamSet ps = algebra_params();
    RelationSet derived = frt_derive(build_r_omega(OmegaFlag::minus_one, ps), false, false);
    RelationSet printed = from_lines(ps, {
        "a*a - d*d", "a*b - q*d*c", "b*b + q^2*c*c", "a*c - q^-1*d*b",
        "a*d - d*a", "b*a + q*c*d", "b*c + c*b", "c*a + q^-1*b*d"});
    bool ok = derived.size() == 8 && derived.same_relations(printed);
    RelationSet rescaled = apply_rescaling(a_omega_six(OmegaFlag::minus_one, ps),
                                           {{gen_c().code, LaurentPoly::monomial(ps, "q", -1)}});
    RelationSet commu = from_lines(ps, {
        "a*a - d*d", "a*d - d*a", "b*b + c*c", "b*c + c*b", "a*b - d*c", "b*a + c*d"});
    ok = ok && rescaled.same_relations(commu);
    verdict(4, ok, "FRT derivation equals the reference relation set; rescaling q*c -> c gives "
                   "the rescaled presentation (exact set equality)");
}

// ---- criterion 5 ----
void criterion_5() {
    ParamSet ps = algebra_params();
    bool ok = true;
    for (OmegaFlag w : {OmegaFlag::minus_one, OmegaFlag::plus_one}) {
        RelationSet six = a_omega_six(w, ps);
        NCPoly f1 = f1_relation(w, ps), f2 = f2_relation(w, ps);
        NCPoly a = NCPoly::generator(ps, gen_a()), b = NCPoly::generator(ps, gen_b());
        NCPoly c = NCPoly::generator(ps, gen_c()), d = NCPoly::generator(ps, gen_d());
        const NCPoly targets[8] = {a * f2, f1 * a, d * f2, f1 * d, b * f1, f2 * b, c * f1, f2 * c};
        for (const NCPoly &t : targets) {
            MembershipResult res = ideal_member(t, six, 3);
            ok = ok && res.member && res.certificate.has_value() &&
                 verify_certificate(t, six, *res.certificate);
        }
    }
    verdict(5, ok, "all eight annihilation products of [F1],[F2] with the generators are ideal "
                   "members at bound 3 with re-checkable certificates, for omega = -1 and +1");
}

// ---- criterion 6 ----
void criterion_6() {
    bool ok = true;
    for (BellSign s : {BellSign::plus, BellSign::minus}) {
        SpectralFamily fam = build_spectral_bell(s);
        YbeResult ybe = check_spectral_ybe(fam);
        ok = ok && ybe.holds;
        FreeFermionReport ff = check_free_fermion(fam);
        LaurentPoly want = parse_scalar("(1+x)^2 + (1-x)^2", fam.matrix.params());
        ok = ok && ff.holds && ff.lhs == want && ff.rhs == want;
        // Also with the deformation parameter symbolic.
        FreeFermionReport ffq = check_free_fermion(build_spectral_bell(s, true));
        ok = ok && ffq.holds && ffq.lhs == want.rebased(ffq.lhs.params());
    }
    verdict(6, ok, "spectral YBE holds for B +- 2x B^-1 as an exact Laurent identity; free-fermion "
                   "condition holds with both sides (1+x)^2 + (1-x)^2");
}

// ---- criterion 7 ----
void criterion_7() {
    ParamSet ps = algebra_params();
    BAlgebraRelations B = derive_b_algebra(true, ps);
    RelationSet b1 = from_lines(ps, {
        "a*a' - a'*a + q*c*c' + q^-1*b'*b",
        "a*b' + b'*a - a'*b + q*c*d'",
        "a*c' + c'*a - c*a' - q^-1*d'*b",
        "a*d' - d'*a - c*b' + c'*b",
        "b*a' - a'*b - b'*a + q*d*c'",
        "b*b' - b'*b + q*d*d' - q*a'*a",
        "b*c' + c'*b - d*a' + d'*a",
        "b*d' + d'*b - d*b' + q*c'*a",
        "c*a' - a'*c + a*c' + q^-1*b'*d",
        "c*b' + b'*c - a'*d + a*d'",
        "c*c' - c'*c - q^-1*a*a' + q^-1*d'*d",
        "c*d' + d'*c - c'*d - q^-1*a*b'",
        "d*a' - a'*d - b'*c + b*c'",
        "d*b' - b'*d - q*a'*c + b*d'",
        "d*c' - c'*d - d'*c - q^-1*b*a'",
        "d*d' - d'*d - q^-1*b*b' - q*c'*c"});
    RelationSet b2 = from_lines(ps, {
        "a*a' - a'*a - q^-1*b*b' - q*c'*c",
        "a*b' - b'*a + b*a' - q*d'*c",
        "a*c' - c'*a - q^-1*b*d' - a'*c",
        "a*d' - d'*a + b*c' - b'*c",
        "b*a' + a'*b - a*b' + q*c'*d",
        "b*b' - b'*b + q*a*a' - q*d'*d",
        "b*c' + c'*b - a*d' + a'*d",
        "b*d' - d'*b + q*a*c' - b'*d",
        "c*a' + a'*c - q^-1*d*b' - c'*a",
        "c*b' + b'*c + d*a' - d'*a",
        "c*c' - c'*c - q^-1*d*d' + q^-1*a'*a",
        "c*d' - d'*c + d*c' + q^-1*b'*a",
        "d*a' - a'*d - c*b' + c'*b",
        "d*b' + b'*d + q*c*a' - d'*b",
        "d*c' + c'*d - c*d' - q^-1*a'*b",
        "d*d' - d'*d + q*c*c' + q^-1*b'*b"});
    bool ok = B.mixed_rels.same_relations(b1.merged(b2));
    std::cout << "  mixed RTT relations match the reference sets (b1) u (b2): " << (ok ? "yes" : "NO")
              << " (" << B.mixed_rels.size() << " relations)\n";

    // The final two-copy relation list (commutation of each generator with
    // every primed generator product, plus the six extra relations).
    const char *finals[22] = {
        "a*a' - a'*a", "d*d' - d'*d", "b*b' - b'*b", "c*c' - c'*c",
        "a*b' - a'*b", "b'*a - b*a'", "d'*c - d*c'", "c*d' - c'*d",
        "a*c' - a'*c", "c'*a - c*a'", "b*d' - b'*d", "d*b' - d'*b",
        "a'*d - a*d'", "d*a' - d'*a", "b*c' - b'*c", "c*b' - c'*b",
        "a'*a - d*d'", "a*d' - d'*a", "b*b' + q^2*c'*c", "b*c' + c'*b",
        "a'*b - q*d'*c", "b*a' + q*c*d'"};
    RelationSet comb = B.combined();
    std::size_t members = 0, inconclusive = 0;
    for (const char *text : finals) {
        NCPoly target = parse_ncpoly(text, ps);
        MembershipResult res = ideal_member(target, comb, 4);
        bool verified = res.member && verify_certificate(target, comb, *res.certificate);
        std::cout << "    " << text << ": "
                  << (verified ? "member (certificate verified)" : "NOT FOUND at bound 4") << "\n";
        if (verified)
            ++members;
        else
            ++inconclusive;
    }
    std::cout << "  verdicts: " << members << " members, " << inconclusive << " inconclusive\n";
    ok = ok && inconclusive == 0;
    verdict(7, ok, "mixed derivations match (b1)/(b2); every final two-copy relation is an "
                   "ideal member at bound <= 4 (verdict table above, zero silent passes)");
}

// ---- criterion 8 ----
std::mt19937_64 rng8(424242);

FieldElement rnd_nonzero() {
    std::uniform_int_distribution<int> v(-6, 6);
    std::uniform_int_distribution<int> d(1, 4);
    for (;;) {
        FieldElement f(Rational(v(rng8), d(rng8)));
        if (!f.is_zero()) return f;
    }
}
FieldElement rnd_scalar() {
    std::uniform_int_distribution<int> v(-6, 6);
    std::uniform_int_distribution<int> d(1, 4);
    return FieldElement(Rational(v(rng8), d(rng8)));
}

Representation random_instance(RepFamilyKind kind) {
    switch (kind) {
        case RepFamilyKind::pauli_scalar:
            return make_family(kind, {{"lambda", rnd_nonzero()}, {"mu", rnd_scalar()}});
        case RepFamilyKind::unit_sigma:
            return make_family(kind, {});
        case RepFamilyKind::fermion:
            return make_family(kind, {{"lambda1", rnd_nonzero()}, {"lambda2", rnd_nonzero()}});
        case RepFamilyKind::distinct_eigen: {
            FieldElement l1 = rnd_nonzero(), l2 = rnd_nonzero();
            while (l2 == l1) l2 = rnd_nonzero();
            return make_family(kind, {{"lambda1", l1}, {"lambda2", l2}, {"c2", rnd_scalar()},
                                      {"c3", rnd_scalar()},
                                      {"eps", rng8() % 2 ? fe("1") : fe("-1")}});
        }
        case RepFamilyKind::b_diagonal:
            return make_family(kind, {{"p", rnd_nonzero()}, {"alpha", rnd_scalar()},
                                      {"beta", rnd_scalar()}});
        case RepFamilyKind::degenerate_a: {
            FieldElement lambda = rnd_nonzero(), alpha = rnd_nonzero(), beta = rnd_nonzero();
            FieldElement gamma = (lambda * lambda - alpha * alpha) / beta;
            FieldElement c2 = rnd_scalar(), c3 = rnd_scalar();
            FieldElement c1 = -(c3 * beta + c2 * gamma) / (FieldElement(2) * alpha);
            return make_family(kind, {{"lambda", lambda}, {"alpha", alpha}, {"beta", beta},
                                      {"gamma", gamma}, {"c1", c1}, {"c2", c2}, {"c3", c3}});
        }
    }
    throw std::logic_error("unreachable");
}

void criterion_8() {
    const RepFamilyKind kinds[6] = {RepFamilyKind::degenerate_a, RepFamilyKind::pauli_scalar,
                                    RepFamilyKind::unit_sigma, RepFamilyKind::distinct_eigen,
                                    RepFamilyKind::fermion, RepFamilyKind::b_diagonal};
    RelationSet defining = a_minus_one_check_set();
    bool ok = true;
    for (RepFamilyKind kind : kinds)
        for (int k = 0; k < 20; ++k) ok = ok && check_rep(random_instance(kind), defining).ok;
    int pairs = 0;
    while (pairs < 50) {
        Representation r1 = random_instance(kinds[rng8() % 6]);
        Representation r2 = random_instance(kinds[rng8() % 6]);
        if (!verify(r1).ok || !verify(r2).ok) {
            ok = false;
            break;
        }
        try {
            Representation prod = coproduct_rep(r1, r2);
            ok = ok && prod.verified && check_rep(prod, defining).ok;
        } catch (const std::exception &) {
            ok = false;
        }
        ++pairs;
    }
    verdict(8, ok, "every 2D family passes check_rep and annihilates [F1],[F2] for 20 random "
                   "valid bindings; 50 random coproduct pairs pass check_rep");
}

// ---- criterion 9 ----
void criterion_9() {
    Representation f12 = make_family(RepFamilyKind::fermion, {{"lambda1", fe("1")}, {"lambda2", fe("2")}});
    Representation f13 = make_family(RepFamilyKind::fermion, {{"lambda1", fe("1")}, {"lambda2", fe("3")}});
    bool ok = verify(f12).ok && verify(f13).ok;
    Representation ex1 = coproduct_rep(f12, f13);
    CompositionSeries cs = composition_series(ex1);
    ok = ok && cs.chain.size() == 5;
    for (std::size_t k = 0; ok && k < 5; ++k) ok = cs.chain[k].dim() == k;
    ok = ok && cs.chain[1].pivots() == std::vector<std::size_t>{0} &&
         cs.chain[2].pivots() == std::vector<std::size_t>{0, 1} &&
         cs.chain[3].pivots() == std::vector<std::size_t>{0, 1, 2};
    for (const auto &v : cs.quotient_verdicts) ok = ok && v == "irreducible";
    // Alternative chain through span{|00>, |10>}.
    bool alt = false;
    for (const auto &chain : cs.alternatives)
        if (chain.size() == 5 && chain[2].pivots() == std::vector<std::size_t>{0, 2}) alt = true;
    ok = ok && alt;
    DecomposeResult dec = decompose(ex1, 12345);
    ok = ok && !dec.decomposable && !dec.inconclusive;
    verdict(9, ok, "fermion(1,2) x fermion(1,3): exact composition series 0 < <00> < <00,01> < "
                   "<00,01,10> < full, all quotients irreducible, indecomposable, alternative "
                   "<00,10> chain emitted");
}

// ---- criterion 10 ----
void criterion_10() {
    Representation p12 = make_family(RepFamilyKind::pauli_scalar, {{"lambda", fe("1")}, {"mu", fe("2")}});
    Representation p13 = make_family(RepFamilyKind::pauli_scalar, {{"lambda", fe("1")}, {"mu", fe("3")}});
    bool ok = verify(p12).ok && verify(p13).ok;
    Representation ex2 = coproduct_rep(p12, p13);

    auto ct = chi_tau_states();
    Subspace s1(4, {ct[0], ct[2]}); // {chi1, tau1}
    Subspace s2(4, {ct[1], ct[3]}); // {chi2, tau2}
    DecomposeResult dec = decompose(ex2, 12345);
    ok = ok && dec.decomposable && dec.summands.size() == 2;
    bool f1 = false, f2s = false;
    for (const auto &s : dec.summands) {
        if (s == s1) f1 = true;
        if (s == s2) f2s = true;
    }
    ok = ok && f1 && f2s;

    // Cyclic action on the summands with w = 2-3i.
    FieldElement w = fe("2 - 3*i"), wb = fe("2 + 3*i");
    ok = ok && ex2.images[1] * ct[0] == fvec_scale(ct[2], -wb);
    ok = ok && ex2.images[1] * ct[2] == fvec_scale(ct[0], w);
    ok = ok && ex2.images[2] * ct[1] == fvec_scale(ct[3], wb);

    // d-hat eigenvalues {z, -z, -zbar, zbar}, z = 1 - 6i.
    auto eig = eigen_analysis(ex2, gen_d());
    std::set<std::string> got;
    for (const auto &e : eig) got.insert(e.eigenvalue.str());
    ok = ok && got == std::set<std::string>{"1 - 6*i", "-1 + 6*i", "-1 - 6*i", "1 + 6*i"};
    ok = ok && ex2.images[3] * ct[0] == fvec_scale(ct[0], fe("1 - 6*i"));

    // All four states maximally entangled; exact local unitaries with
    // tr(Ui+ Uj) = 2 delta_ij.
    FMatrix us[4] = {FMatrix(2, 2), FMatrix(2, 2), FMatrix(2, 2), FMatrix(2, 2)};
    for (int k = 0; k < 4; ++k) {
        SchmidtData sd = schmidt(ct[static_cast<std::size_t>(k)]);
        ok = ok && sd.maximally_entangled;
        us[k] = local_unitary_from_bell(ct[static_cast<std::size_t>(k)]);
    }
    FieldElement r = fe("1/2*sqrt2"), ir = fe("1/2*i*sqrt2");
    ok = ok && us[0] == FMatrix::from_rows({{r, ir}, {ir, r}});    // (1 + i sx)/sqrt2
    ok = ok && us[3] == FMatrix::from_rows({{r, -ir}, {-ir, r}});  // (1 - i sx)/sqrt2
    ok = ok && us[1] == FMatrix::from_rows({{r, -ir}, {ir, -r}});  // (sz + sy)/sqrt2
    ok = ok && us[2] == FMatrix::from_rows({{r, ir}, {-ir, -r}});  // (sz - sy)/sqrt2
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            ok = ok && (us[i].adjoint() * us[j]).trace() == (i == j ? fe("2") : fe("0"));
    verdict(10, ok, "pauli coproduct: two cyclic 2D summands {chi1,tau1}, {chi2,tau2}; d-hat "
                    "eigenvalues {z,-z,-zbar,zbar} with z = 1-6i; all four states maximally "
                    "entangled; exact local unitaries with tr(Ui+ Uj) = 2 delta_ij");
}

// ---- criterion 11 ----
void criterion_11() {
    Representation f12 = make_family(RepFamilyKind::fermion, {{"lambda1", fe("1")}, {"lambda2", fe("2")}});
    Representation f13 = make_family(RepFamilyKind::fermion, {{"lambda1", fe("1")}, {"lambda2", fe("3")}});
    Representation f1h = make_family(RepFamilyKind::fermion, {{"lambda1", fe("1")}, {"lambda2", fe("1/2")}});
    bool ok = verify(f12).ok && verify(f13).ok && verify(f1h).ok;
    Representation phi_rep = coproduct_rep(f12, f13);
    ok = ok && ladder_check(phi_rep, LadderKind::phi, 5, fe("2"), fe("3")).ok;
    Representation psi_rep = coproduct_rep(f12, f1h);
    ok = ok && ladder_check(psi_rep, LadderKind::psi, 4, fe("2"), fe("1/2")).ok;
    verdict(11, ok, "phi ladder (lambda=2, lambda'=3, n<=5) and psi ladder (lambda=2, "
                    "lambda'=1/2, n<=4) hold exactly");
}

// ---- criterion 12 ----
void criterion_12() {
    std::mt19937_64 rng(20260809);
    std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
    double worst_closed = 0, worst_series = 0;
    for (int k = 0; k < 100; ++k) {
        EvolutionPoint pt{angle(rng), angle(rng)};
        BellSign s = (rng() % 2) ? BellSign::plus : BellSign::minus;
        std::size_t ket = rng() % 4;
        C4 num = evolve(s, pt, ket);
        C4 closed = evolve_closed_form(s, pt, ket);
        for (int j = 0; j < 4; ++j)
            worst_closed = std::max(worst_closed, std::abs(num[j] - closed[j]));
        CMat4 b = evolution_matrix(s, pt);
        CMat4 series = evolution_matrix_series(s, pt);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                worst_series = std::max(worst_series, std::abs(b[i][j] - series[i][j]));
    }
    bool ok = worst_closed < 1e-12 && worst_series < 1e-12;
    std::ostringstream note;
    note << "max |evolve - closed form| = " << worst_closed
         << ", max |B(theta) - series exp| = " << worst_series << " (tolerance 1e-12)";
    verdict(12, ok, "evolution matches the closed forms and the series exponential at 100 random points",
            note.str());
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (g_failed) {
        std::cout << g_failed << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
