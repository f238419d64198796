#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bellalg/json_io.hpp"

using namespace bellalg;

namespace {
FieldElement fe(const char *s) { return parse_field_element(s); }
}

TEST_CASE("matrix JSON: schema and bit-exact round-trip") {
    SymMatrix r = build_r_omega(OmegaFlag::minus_one, bell_params());
    Json j = matrix_to_json(r);
    CHECK(j["rows"] == 4);
    CHECK(j["cols"] == 4);
    CHECK(j["params"] == Json::array({"q", "x"}));
    CHECK(j["entries"][3] == "q");
    CHECK(j["entries"][12] == "-q^-1");
    SymMatrix back = matrix_from_json(j);
    CHECK(back == r);
    CHECK(matrix_to_json(back).dump() == j.dump());
}

TEST_CASE("representation JSON round-trip") {
    Representation rep = make_family(RepFamilyKind::pauli_scalar,
                                     {{"lambda", fe("1")}, {"mu", fe("1/2")}});
    REQUIRE(verify(rep).ok);
    Json j = representation_to_json(rep);
    Representation back = representation_from_json(j);
    CHECK(back.dim == rep.dim);
    for (int g = 0; g < 4; ++g) CHECK(back.images[g] == rep.images[g]);
    CHECK(back.bindings.at("mu") == fe("1/2"));
    CHECK(representation_to_json(back)["images"].dump() == j["images"].dump());
}

TEST_CASE("relation set JSON round-trip") {
    RelationSet rels = a_omega_six(OmegaFlag::minus_one);
    Json j = relation_set_to_json(rels);
    RelationSet back = relation_set_from_json(j);
    CHECK(back.same_relations(rels));
    CHECK(back.label(0) == rels.label(0));
}

TEST_CASE("certificate JSON carries the combination verbatim") {
    ParamSet ps = algebra_params();
    RelationSet six = a_omega_six(OmegaFlag::minus_one, ps);
    NCPoly target = NCPoly::generator(ps, gen_a()) * f2_relation(OmegaFlag::minus_one, ps);
    MembershipResult res = ideal_member(target, six, 3);
    REQUIRE(res.member);
    Json j = certificate_to_json(*res.certificate);
    CHECK(j.is_array());
    CHECK(j.size() == res.certificate->combination.size());
    for (const auto &t : j) {
        CHECK(t.contains("left"));
        CHECK(t.contains("relation"));
        CHECK(t.contains("right"));
        CHECK(t.contains("coeff"));
    }
}

TEST_CASE("evolution JSON shape") {
    C4 out = evolve(BellSign::plus, {0.0, 0.0}, 0);
    Json j = evolution_to_json(BellSign::plus, {0.0, 0.0}, 0, out);
    CHECK(j["sign"] == "+");
    CHECK(j["in"] == "00");
    CHECK(j["out"].size() == 4);
    CHECK(j["out"][0].size() == 2);
    CHECK(j["out"][0][0].get<double>() == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(j["out"][3][0].get<double>() == doctest::Approx(-1 / std::sqrt(2.0)));
}

TEST_CASE("malformed JSON inputs raise ParseError") {
    CHECK_THROWS_AS(matrix_from_json(Json{{"rows", 2}, {"cols", 2}, {"entries", Json::array({"1"})}}),
                    ParseError);
    CHECK_THROWS_AS(representation_from_json(Json{{"dim", 2}, {"images", Json::object()}}),
                    ParseError);
}
