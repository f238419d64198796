// bellalg: exact verification CLI for the Bell-matrix quantum algebras.
//
// Subcommands: ybe, frt, ideal, rep, evolve, bell-table. Every command prints
// a human-readable report (or full JSON with --json) and exits with
//   0 = pass, 1 = fail, 2 = inconclusive, 64 = malformed input.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bellalg/json_io.hpp"

using namespace bellalg;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

struct CommandReport {
    std::string command;
    std::string status; // pass | fail | inconclusive
    Json details = Json::object();

    int exit_code() const {
        if (status == "pass") return kExitPass;
        if (status == "fail") return kExitFail;
        return kExitInconclusive;
    }
    void emit(bool as_json) const {
        if (as_json) {
            Json j{{"command", command}, {"status", status}, {"details", details},
                   {"exitCode", exit_code()}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "[" << status << "] " << command << "\n";
            if (!details.empty()) std::cout << details.dump(2) << "\n";
        }
    }
};

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    Json j;
    in >> j;
    return j;
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

SymMatrix builtin_matrix(const std::string &name) {
    ParamSet ps = bell_params();
    if (name == "bell+") return build_bell(BellSign::plus, ps);
    if (name == "bell-") return build_bell(BellSign::minus, ps);
    if (name == "r_omega+1") return build_r_omega(OmegaFlag::plus_one, ps);
    if (name == "r_omega-1") return build_r_omega(OmegaFlag::minus_one, ps);
    if (name == "swap") return swap_matrix(ps);
    if (name == "identity") return SymMatrix::identity(ps, 4);
    throw ParseError("unknown builtin matrix '" + name + "'");
}

SpectralFamily builtin_family(const std::string &name) {
    if (name == "bellx+") return build_spectral_bell(BellSign::plus);
    if (name == "bellx-") return build_spectral_bell(BellSign::minus);
    if (name == "bellxq+") return build_spectral_bell(BellSign::plus, true);
    if (name == "bellxq-") return build_spectral_bell(BellSign::minus, true);
    throw ParseError("unknown builtin spectral family '" + name + "' (try bellx+/bellx-/bellxq+/bellxq-)");
}

RelationSet builtin_relations(const std::string &name) {
    if (name == "A-1-six") return a_omega_six(OmegaFlag::minus_one);
    if (name == "A+1-six") return a_omega_six(OmegaFlag::plus_one);
    if (name == "A-1-rescaled") return a_omega_rescaled(OmegaFlag::minus_one);
    if (name == "A-1-full") return a_minus_one_check_set();
    if (name == "B-1-combined") return derive_b_algebra(true).combined();
    throw ParseError("unknown builtin relation set '" + name +
                     "' (try A-1-six, A+1-six, A-1-rescaled, A-1-full, B-1-combined)");
}

RelationSet load_relations(const std::string &spec) {
    if (spec.find('.') == std::string::npos) return builtin_relations(spec);
    std::string text = read_text_file(spec);
    if (!text.empty() && text[0] == '{') return relation_set_from_json(Json::parse(text));
    return parse_relation_set(text);
}

// ---- rep command helpers ----

const std::vector<std::pair<std::string, std::vector<std::string>>> &family_positional() {
    static const std::vector<std::pair<std::string, std::vector<std::string>>> table = {
        {"pauli_scalar", {"lambda", "mu"}},
        {"fermion", {"lambda1", "lambda2"}},
        {"unit_sigma", {}},
        {"distinct_eigen", {"lambda1", "lambda2", "c2", "c3", "eps"}},
        {"b_diagonal", {"p", "alpha", "beta"}},
        {"degenerate_a", {"lambda", "alpha", "beta", "gamma", "c1", "c2", "c3"}},
    };
    return table;
}

std::string canonical_param_name(const std::string &family, const std::string &key) {
    // Compact aliases: l -> lambda, m -> mu, l1/l2 -> lambda1/lambda2, e -> eps,
    // a/b/g -> alpha/beta/gamma.
    static const std::map<std::string, std::string> alias = {
        {"l", "lambda"}, {"m", "mu"},    {"l1", "lambda1"}, {"l2", "lambda2"},
        {"e", "eps"},    {"a", "alpha"}, {"b", "beta"},     {"g", "gamma"},
    };
    (void)family;
    auto it = alias.find(key);
    return it == alias.end() ? key : it->second;
}

std::map<std::string, FieldElement> parse_params_arg(const std::string &family,
                                                     const std::string &arg) {
    std::map<std::string, FieldElement> out;
    std::size_t start = 0;
    while (start < arg.size()) {
        std::size_t end = arg.find(',', start);
        std::string piece = arg.substr(start, end == std::string::npos ? std::string::npos : end - start);
        start = end == std::string::npos ? arg.size() : end + 1;
        if (piece.empty()) continue;
        std::size_t eq = piece.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value in --params, got '" + piece + "'");
        out[canonical_param_name(family, piece.substr(0, eq))] =
            parse_field_element(piece.substr(eq + 1));
    }
    return out;
}

// "fermion:1,2" -> verified representation.
Representation parse_family_spec(const std::string &spec) {
    std::size_t colon = spec.find(':');
    std::string fam = colon == std::string::npos ? spec : spec.substr(0, colon);
    auto kind = family_from_string(fam);
    if (!kind) throw ParseError("unknown family '" + fam + "'");
    std::map<std::string, FieldElement> params;
    if (colon != std::string::npos) {
        const auto &table = family_positional();
        const std::vector<std::string> *names = nullptr;
        for (const auto &[k, v] : table)
            if (k == fam) names = &v;
        std::string rest = spec.substr(colon + 1);
        std::size_t start = 0, idx = 0;
        while (start < rest.size()) {
            std::size_t end = rest.find(',', start);
            std::string piece =
                rest.substr(start, end == std::string::npos ? std::string::npos : end - start);
            start = end == std::string::npos ? rest.size() : end + 1;
            if (idx >= names->size())
                throw ParseError("too many positional parameters for family '" + fam + "'");
            params[(*names)[idx++]] = parse_field_element(piece);
        }
    }
    Representation rep = make_family(*kind, params);
    CheckResult res = verify(rep);
    if (!res.ok)
        throw std::logic_error("family instance failed verification against the defining relations");
    return rep;
}

// ---- subcommand implementations ----

CommandReport run_ybe(const std::string &builtin, const std::string &matrix_file, bool spectral,
                      const std::string &spectral_param) {
    CommandReport rep;
    rep.command = "ybe";
    if (spectral) {
        SpectralFamily fam = !builtin.empty()
                                 ? builtin_family(builtin)
                                 : SpectralFamily{spectral_param, matrix_from_json(read_json_file(matrix_file))};
        YbeResult res = check_spectral_ybe(fam);
        rep.status = res.holds ? "pass" : "fail";
        rep.details["equation"] = "spectral braid-form YBE";
        rep.details["convention"] = res.convention;
        if (res.witness)
            rep.details["witness"] = Json{{"row", res.witness->row},
                                          {"col", res.witness->col},
                                          {"value", res.witness->value}};
        return rep;
    }
    SymMatrix m = !builtin.empty() ? builtin_matrix(builtin) : matrix_from_json(read_json_file(matrix_file));
    YbeResult res = check_braid_ybe(m);
    rep.status = res.holds ? "pass" : "fail";
    rep.details["equation"] = "braided YBE";
    if (res.witness)
        rep.details["witness"] = Json{{"row", res.witness->row},
                                      {"col", res.witness->col},
                                      {"value", res.witness->value}};
    return rep;
}

CommandReport run_frt(const std::string &builtin, const std::string &matrix_file, bool mixed,
                      const std::string &out_file) {
    CommandReport rep;
    rep.command = "frt";
    SymMatrix m = !builtin.empty() ? builtin_matrix(builtin) : matrix_from_json(read_json_file(matrix_file));
    RelationSet rels(m.params());
    if (mixed) {
        rels = frt_derive(m, false, true, "b1:").merged(frt_derive(m, true, false, "b2:"));
    } else {
        rels = frt_derive(m, false, false);
    }
    rep.status = "pass";
    rep.details["count"] = rels.size();
    rep.details["relations"] = relation_set_to_json(rels);
    rep.details["text"] = rels.str();
    if (!out_file.empty()) {
        std::ofstream out(out_file);
        out << rels.str();
        Json j = relation_set_to_json(rels);
        std::ofstream outj(out_file + ".json");
        outj << j.dump(2) << "\n";
        rep.details["written"] = Json::array({out_file, out_file + ".json"});
    }
    return rep;
}

CommandReport run_ideal(const std::string &target_text, const std::string &relations,
                        std::size_t bound) {
    CommandReport rep;
    rep.command = "ideal";
    RelationSet rels = load_relations(relations);
    NCPoly target = parse_ncpoly(target_text, rels.params());
    if (bound < target.degree())
        throw ParseError("--bound " + std::to_string(bound) + " is smaller than the target degree " +
                         std::to_string(target.degree()));
    MembershipResult res = ideal_member(target, rels, bound);
    rep.details["target"] = target.str();
    rep.details["bound"] = bound;
    rep.details["span_products"] = res.span_size;
    if (res.member) {
        rep.status = "pass";
        rep.details["verdict"] = "member";
        rep.details["certificate"] = certificate_to_json(*res.certificate);
        rep.details["certificate_verified"] = verify_certificate(target, rels, *res.certificate);
    } else {
        rep.status = "inconclusive";
        rep.details["verdict"] = "not-found-at-bound";
    }
    return rep;
}

CommandReport run_rep(const std::string &family, const std::string &params_arg,
                      const std::vector<std::string> &coproduct, const std::string &rep_file,
                      const std::string &analyze, int nmax, const std::string &ladder_kind,
                      std::uint64_t seed) {
    CommandReport out;
    out.command = "rep";
    Representation rep;
    FieldElement lambda, lambda_prime;
    bool have_lambdas = false;
    if (!coproduct.empty()) {
        if (coproduct.size() != 2) throw ParseError("--coproduct needs exactly two family specs");
        Representation r1 = parse_family_spec(coproduct[0]);
        Representation r2 = parse_family_spec(coproduct[1]);
        rep = coproduct_rep(r1, r2);
        if (r1.bindings.count("lambda2") && r2.bindings.count("lambda2")) {
            lambda = r1.bindings.at("lambda2");
            lambda_prime = r2.bindings.at("lambda2");
            have_lambdas = true;
        }
    } else if (!family.empty()) {
        auto kind = family_from_string(family);
        if (!kind) throw ParseError("unknown family '" + family + "'");
        rep = make_family(*kind, parse_params_arg(family, params_arg));
    } else if (!rep_file.empty()) {
        rep = representation_from_json(read_json_file(rep_file));
    } else {
        throw ParseError("rep: need --family, --coproduct or --rep");
    }
    out.details["representation"] = representation_to_json(rep);

    if (analyze == "verify") {
        CheckResult res = check_rep(rep, a_minus_one_check_set());
        out.status = res.ok ? "pass" : "fail";
        Json v = Json::array();
        for (const auto &viol : res.violations)
            v.push_back(Json{{"label", viol.label},
                             {"relation", viol.relation},
                             {"residual", fmatrix_to_json(viol.residual)}});
        out.details["violations"] = std::move(v);
        out.details["relations_checked"] = a_minus_one_check_set().size();
        return out;
    }
    // All other analyses need a verified representation.
    if (!rep.verified) {
        CheckResult res = verify(rep);
        if (!res.ok) {
            out.status = "fail";
            out.details["error"] = "representation violates the defining relations";
            return out;
        }
    }
    if (analyze == "series") {
        CompositionSeries cs = composition_series(rep);
        Json chain = Json::array();
        for (const auto &s : cs.chain) chain.push_back(subspace_to_json(s));
        out.details["chain"] = std::move(chain);
        out.details["quotients"] = cs.quotient_verdicts;
        Json alts = Json::array();
        for (const auto &alt : cs.alternatives) {
            Json c = Json::array();
            for (const auto &s : alt) c.push_back(subspace_to_json(s));
            alts.push_back(std::move(c));
        }
        out.details["alternatives"] = std::move(alts);
        out.status = "pass";
        return out;
    }
    if (analyze == "decompose") {
        DecomposeResult res = decompose(rep, seed);
        out.details["commutant_dim"] = res.commutant_dim;
        out.details["radical_dim"] = res.radical_dim;
        out.details["note"] = res.note;
        if (res.inconclusive) {
            out.status = "inconclusive";
            return out;
        }
        out.status = "pass";
        if (res.decomposable) {
            Json s = Json::array();
            for (const auto &sub : res.summands) s.push_back(subspace_to_json(sub));
            out.details["verdict"] = "decomposable";
            out.details["summands"] = std::move(s);
        } else {
            out.details["verdict"] = "indecomposable";
        }
        return out;
    }
    if (analyze == "entangle") {
        if (rep.dim != 4)
            throw ParseError("entangle analysis requires a 4-dimensional representation");
        std::vector<EigenData> eig = eigen_analysis(rep, gen_d());
        Json rows = Json::array();
        for (const auto &e : eig) {
            for (const auto &v : e.eigenvectors.basis()) {
                Json row;
                row["eigenvalue"] = e.eigenvalue.str();
                Json vec = Json::array();
                for (const auto &x : v) vec.push_back(x.str());
                row["vector"] = std::move(vec);
                SchmidtData sd = schmidt(v);
                row["schmidt"] = Json::array({sd.c1, sd.c2});
                row["maximally_entangled"] = sd.maximally_entangled;
                if (sd.maximally_entangled)
                    row["local_unitary"] = fmatrix_to_json(local_unitary_from_bell(v));
                rows.push_back(std::move(row));
            }
        }
        out.details["d_eigenvectors"] = std::move(rows);
        out.status = "pass";
        return out;
    }
    if (analyze == "ladder") {
        if (!have_lambdas)
            throw ParseError("--analyze ladder requires --coproduct fermion:1,L fermion:1,L'");
        LadderKind kind = ladder_kind == "psi" ? LadderKind::psi : LadderKind::phi;
        LadderReport lr = ladder_check(rep, kind, nmax, lambda, lambda_prime);
        out.status = lr.ok ? "pass" : "fail";
        out.details["kind"] = ladder_kind;
        out.details["n_max"] = nmax;
        out.details["failures"] = lr.failures;
        return out;
    }
    throw ParseError("unknown --analyze mode '" + analyze + "'");
}

CommandReport run_evolve(const std::string &sign, double theta, double phi, const std::string &ket) {
    CommandReport rep;
    rep.command = "evolve";
    BellSign s = sign == "-" ? BellSign::minus : BellSign::plus;
    static const std::map<std::string, std::size_t> kets = {
        {"00", 0}, {"01", 1}, {"10", 2}, {"11", 3}};
    auto it = kets.find(ket);
    if (it == kets.end()) throw ParseError("--ket must be one of 00, 01, 10, 11");
    EvolutionPoint pt{theta, phi};
    C4 out = evolve(s, pt, it->second);
    C4 closed = evolve_closed_form(s, pt, it->second);
    double resid = 0;
    for (int k = 0; k < 4; ++k) resid = std::max(resid, std::abs(out[k] - closed[k]));
    rep.details = evolution_to_json(s, pt, it->second, out);
    rep.details["closed_form_residual"] = resid;
    rep.status = resid < 1e-12 ? "pass" : "fail";
    return rep;
}

CommandReport run_bell_table() {
    CommandReport rep;
    rep.command = "bell-table";
    static const char *kets[4] = {"00", "01", "10", "11"};
    for (BellSign s : {BellSign::plus, BellSign::minus}) {
        auto table = generation_table(s);
        Json rows = Json::object();
        for (std::size_t k = 0; k < 4; ++k) rows[kets[k]] = table[k].str();
        rep.details[std::string("B") + to_string(s)] = std::move(rows);
    }
    rep.status = "pass";
    return rep;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact verification tool for the Bell-matrix quantum algebras"};
    app.require_subcommand(1);
    app.fallthrough(); // let global flags appear after the subcommand too
    bool as_json = false;
    std::uint64_t seed = 12345;
    app.add_flag("--json", as_json, "emit the full report as JSON");
    app.add_option("--seed", seed, "random seed for decompose retries");

    // ybe
    auto *ybe = app.add_subcommand("ybe", "check the braided or spectral Yang-Baxter equation");
    std::string ybe_builtin, ybe_matrix, ybe_param = "x";
    bool ybe_spectral = false;
    ybe->add_option("--builtin", ybe_builtin,
                    "bell+, bell-, r_omega+1, r_omega-1, swap, identity; with --spectral: "
                    "bellx+, bellx-, bellxq+, bellxq-");
    ybe->add_option("--matrix", ybe_matrix, "matrix JSON file");
    ybe->add_flag("--spectral", ybe_spectral, "check the spectral YBE of a one-parameter family");
    ybe->add_option("--param", ybe_param, "spectral parameter name for --matrix input");

    // frt
    auto *frt = app.add_subcommand("frt", "derive the RTT relations of a 4x4 matrix");
    std::string frt_builtin, frt_matrix, frt_out;
    bool frt_mixed = false;
    frt->add_option("--builtin", frt_builtin, "builtin matrix name");
    frt->add_option("--matrix", frt_matrix, "matrix JSON file");
    frt->add_flag("--mixed", frt_mixed, "derive the mixed (b1)/(b2) relations");
    frt->add_option("--out", frt_out, "write relations to this file (text + .json)");

    // ideal
    auto *ideal = app.add_subcommand("ideal", "bounded-degree two-sided ideal membership");
    std::string ideal_target, ideal_rels = "A-1-six";
    std::size_t ideal_bound = 4;
    ideal->add_option("--target", ideal_target, "noncommutative polynomial")->required();
    ideal->add_option("--relations", ideal_rels, "builtin set name or relations file");
    ideal->add_option("--bound", ideal_bound, "degree bound");

    // rep
    auto *repc = app.add_subcommand("rep", "construct and analyze representations");
    std::string rep_family, rep_params, rep_file, rep_analyze = "verify", rep_ladder = "phi";
    std::vector<std::string> rep_coproduct;
    int rep_nmax = 5;
    repc->add_option("--family", rep_family, "family name");
    repc->add_option("--params", rep_params, "comma-separated key=value bindings");
    repc->add_option("--coproduct", rep_coproduct, "two family specs like fermion:1,2")->expected(2);
    repc->add_option("--rep", rep_file, "representation JSON file");
    repc->add_option("--analyze", rep_analyze, "verify | series | decompose | entangle | ladder");
    repc->add_option("--ladder-kind", rep_ladder, "phi | psi");
    repc->add_option("--nmax", rep_nmax, "ladder length");

    // evolve
    auto *evo = app.add_subcommand("evolve", "numeric Bell-state evolution");
    std::string evo_sign = "+", evo_ket = "00";
    double evo_theta = 0, evo_phi = 0;
    evo->add_option("--sign", evo_sign, "+ or -");
    evo->add_option("--theta", evo_theta, "angle theta (radians)");
    evo->add_option("--phi", evo_phi, "angle phi (radians)");
    evo->add_option("--ket", evo_ket, "input basis ket: 00, 01, 10, 11");

    // bell-table
    app.add_subcommand("bell-table", "generation table of the Bell matrices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        CommandReport report;
        if (app.got_subcommand("ybe")) {
            if (ybe_builtin.empty() && ybe_matrix.empty())
                throw ParseError("ybe: need --builtin or --matrix");
            report = run_ybe(ybe_builtin, ybe_matrix, ybe_spectral, ybe_param);
        } else if (app.got_subcommand("frt")) {
            if (frt_builtin.empty() && frt_matrix.empty())
                throw ParseError("frt: need --builtin or --matrix");
            report = run_frt(frt_builtin, frt_matrix, frt_mixed, frt_out);
        } else if (app.got_subcommand("ideal")) {
            report = run_ideal(ideal_target, ideal_rels, ideal_bound);
        } else if (app.got_subcommand("rep")) {
            report = run_rep(rep_family, rep_params, rep_coproduct, rep_file, rep_analyze,
                             rep_nmax, rep_ladder, seed);
        } else if (app.got_subcommand("evolve")) {
            report = run_evolve(evo_sign, evo_theta, evo_phi, evo_ket);
        } else {
            report = run_bell_table();
        }
        report.emit(as_json);
        return report.exit_code();
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConstraintError &e) {
        std::cerr << "constraint violation: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Json::exception &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
