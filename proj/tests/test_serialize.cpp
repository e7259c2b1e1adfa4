#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "rootk/serialize.hpp"

using namespace rootk;

namespace {

VerificationReport small_report() {
    VerifyOptions opt;
    opt.max_classical_rank = 3;
    opt.exceptional = {{Family::G, 2}};
    return verify_range(opt);
}

}  // namespace

TEST_CASE("verification report round-trips field for field") {
    VerificationReport rep = small_report();
    REQUIRE(!rep.pairs.empty());
    const std::string text = report_to_json(rep).dump(2);
    VerificationReport back = report_from_json(Json::parse(text));
    CHECK(back.mismatch_count == rep.mismatch_count);
    REQUIRE(back.pairs.size() == rep.pairs.size());
    for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
        const PairVerdict &a = rep.pairs[i], &b = back.pairs[i];
        CHECK(a.ambient == b.ambient);
        CHECK(a.spec.ambient == b.spec.ambient);
        CHECK(a.spec.steps == b.spec.steps);
        CHECK(a.components == b.components);
        CHECK(a.torus_rank == b.torus_rank);
        CHECK(a.complement_size == b.complement_size);
        CHECK(a.computed_k == b.computed_k);
        CHECK(a.symmetric == b.symmetric);
        CHECK(a.cartan_label == b.cartan_label);
        CHECK(a.expected_k == b.expected_k);
        CHECK(a.matches == b.matches);
    }
}

TEST_CASE("serialization is byte deterministic") {
    const std::string once = report_to_json(small_report()).dump(2);
    const std::string twice = report_to_json(small_report()).dump(2);
    CHECK(once == twice);

    RootSystem b2 = make_root_system({Family::B, 2});
    SubsystemSpec spec = parse_spec("B2 ext:2");
    CHECK(gkm_to_json(b2, gkm_graph(b2, spec)).dump() ==
          gkm_to_json(b2, gkm_graph(b2, spec)).dump());
    CHECK(roots_to_json(b2).dump() == roots_to_json(b2).dump());
}

TEST_CASE("schema version is enforced") {
    Json j = report_to_json(small_report());
    j["schema"] = "0";
    CHECK_THROWS_AS(report_from_json(j), std::invalid_argument);
    j.erase("schema");
    CHECK_THROWS_AS(report_from_json(j), std::invalid_argument);
}

TEST_CASE("root table export") {
    RootSystem f4 = make_root_system({Family::F, 4});
    Json j = roots_to_json(f4);
    CHECK(j.at("schema") == "1");
    CHECK(j.at("type") == "F4");
    CHECK(j.at("count") == 24);
    CHECK(j.at("highest_text") == "2342");
    CHECK(j.at("weyl_order") == "1152");
    CHECK(j.at("marks") == Json::array({2, 3, 4, 2}));
    REQUIRE(j.at("roots").size() == 24);
    CHECK(j.at("roots").front().at("coefficients").is_array());
    CHECK(j.at("roots").front().at("height").is_number_integer());
}

TEST_CASE("subsystem export carries the trace") {
    RootSystem f4 = make_root_system({Family::F, 4});
    Subsystem sub = subsystem_roots(f4, parse_spec("F4 ext:1"));
    Json j = subsystem_to_json(f4, sub);
    CHECK(j.at("ambient") == "F4");
    CHECK(j.at("spec") == "ext:1");
    std::multiset<std::string> comps(j.at("components").begin(), j.at("components").end());
    CHECK(comps == std::multiset<std::string>{"A1", "C3"});
    CHECK(j.at("torus_rank") == 0);
    CHECK(j.at("positive_count") == 10);
    REQUIRE(j.at("trace").size() == 1);
    CHECK(j.at("trace").front().at("step") == "ext:1");
    CHECK(!j.at("trace").front().at("added").is_null());
}

TEST_CASE("independence export with witness") {
    RootSystem f4 = make_root_system({Family::F, 4});
    Subsystem sub = subsystem_roots(f4, parse_spec("F4 ext:4"));
    WeightSet comp = complement_weight_set(f4, sub);
    IndependenceReport rep = independence_number(comp);
    Json j = indep_to_json(f4, sub, comp, rep, true);
    CHECK(j.at("k") == 3);
    CHECK(j.at("rank") == 4);
    CHECK(j.at("complement_size") == 8);
    REQUIRE(j.at("circuit").size() == 4);
    CHECK(j.at("relation").size() == 4);
    // Without the witness flag the circuit is kept out of the payload.
    Json quiet = indep_to_json(f4, sub, comp, rep, false);
    CHECK(!quiet.contains("circuit"));
}

TEST_CASE("signed graph export") {
    RootSystem b2 = make_root_system({Family::B, 2});
    SignedGraph g = complement_graph(b2, parse_spec("B2 node:1"));
    GraphVerdict verdict = graph_k(g);
    Json j = signed_graph_to_json(g, verdict);
    CHECK(j.at("type") == "B2");
    CHECK(j.at("vertices") == 2);
    CHECK(j.at("edges").size() == 2);
    CHECK(j.at("loops") == Json::array({1}));
    CHECK(j.at("k") == 2);
    REQUIRE(!j.at("witness").is_null());
    CHECK(j.at("witness").at("pattern") == "digon_plus_loop");
    CHECK(j.at("witness").at("support").size() == 3);
}

TEST_CASE("gkm export") {
    RootSystem b2 = make_root_system({Family::B, 2});
    GkmGraph g = gkm_graph(b2, parse_spec("B2 ext:2"));
    Json j = gkm_to_json(b2, g);
    CHECK(j.at("weyl_order") == "8");
    CHECK(j.at("subgroup_order") == "4");
    CHECK(j.at("degree") == 2);
    REQUIRE(j.at("vertices").size() == 2);
    CHECK(j.at("vertices").front().at("id") == 0);
    CHECK(j.at("vertices").front().at("representative").is_array());
    REQUIRE(j.at("edges").size() == 2);
    std::multiset<std::string> labels;
    for (const Json& e : j.at("edges")) labels.insert(e.at("label").dump());
    CHECK(labels == std::multiset<std::string>{"[0,1]", "[1,0]"});

    const std::string dot = gkm_to_dot(b2, g);
    CHECK(dot.find("graph gkm {") == 0);
    CHECK(dot.find("0 -- 1 [label=\"10\"]") != std::string::npos);
    CHECK(dot.find("0 -- 1 [label=\"01\"]") != std::string::npos);
}
