#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "rootk/subsystem.hpp"

using namespace rootk;

namespace {

Subsystem resolve(const std::string& text) {
    auto spec = parse_spec(text);
    auto sys = make_root_system(spec.ambient);
    return subsystem_roots(sys, spec);
}

std::multiset<std::string> component_names(const Subsystem& sub) {
    std::multiset<std::string> out;
    for (const LieType& c : sub.components) out.insert(to_string(c));
    return out;
}

}  // namespace

TEST_CASE("spec grammar") {
    auto spec = parse_spec("F4 ext:1");
    CHECK(spec.ambient == LieType{Family::F, 4});
    REQUIRE(spec.steps.size() == 1);
    CHECK(spec.steps[0] == RemovalStep{RemovalMode::ext, 1});

    auto multi = parse_spec("B4  ext:4 ; ext:2");
    CHECK(multi.steps.size() == 2);
    CHECK(steps_string(multi) == "ext:4;ext:2");

    CHECK_THROWS_AS(parse_spec("F4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_spec("F4 foo:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_spec("F4 ext:"), std::invalid_argument);
    CHECK_THROWS_AS(parse_spec("F4 ext:1;"), std::invalid_argument);
    CHECK_THROWS_AS(parse_spec("Q4 ext:1"), std::invalid_argument);
}

TEST_CASE("legality of removals") {
    // Mark 4 is not prime.
    CHECK_THROWS_WITH(parse_spec("F4 ext:3"), Catch::Matchers::ContainsSubstring("prime"));
    // Mark 1 supports node removals only.
    CHECK_THROWS_AS(parse_spec("A3 ext:1"), std::invalid_argument);
    // Mark 2 is not 1.
    CHECK_THROWS_WITH(parse_spec("B3 node:2"), Catch::Matchers::ContainsSubstring("mark"));
    // Index range.
    CHECK_THROWS_WITH(parse_spec("A3 node:4"), Catch::Matchers::ContainsSubstring("range"));
}

TEST_CASE("presets resolve to steps") {
    CHECK(parse_spec("F4 preset:FII").steps == std::vector<RemovalStep>{{RemovalMode::ext, 4}});
    CHECK(parse_spec("F4 preset:FI").steps == std::vector<RemovalStep>{{RemovalMode::ext, 1}});
    CHECK(parse_spec("A4 preset:AIII(2)").steps == std::vector<RemovalStep>{{RemovalMode::node, 3}});
    CHECK(parse_spec("B5 preset:BDI(1)").steps == std::vector<RemovalStep>{{RemovalMode::node, 1}});
    CHECK(parse_spec("B5 preset:BDI(3)").steps == std::vector<RemovalStep>{{RemovalMode::ext, 3}});
    CHECK(parse_spec("B5 preset:BDI(5)").steps == std::vector<RemovalStep>{{RemovalMode::ext, 5}});
    CHECK(parse_spec("D5 preset:DIII").steps == std::vector<RemovalStep>{{RemovalMode::node, 5}});
    CHECK(parse_spec("C4 preset:CI").steps == std::vector<RemovalStep>{{RemovalMode::node, 4}});
    CHECK(parse_spec("C4 preset:CII(1)").steps == std::vector<RemovalStep>{{RemovalMode::ext, 1}});
    CHECK(parse_spec("E6 preset:EIII").steps == std::vector<RemovalStep>{{RemovalMode::node, 1}});
    CHECK(parse_spec("E8 preset:EVIII").steps == std::vector<RemovalStep>{{RemovalMode::ext, 1}});

    CHECK_THROWS_AS(parse_spec("B5 preset:AIII(1)"), std::invalid_argument);   // wrong family
    CHECK_THROWS_AS(parse_spec("A4 preset:AIII"), std::invalid_argument);      // missing param
    CHECK_THROWS_AS(parse_spec("A4 preset:AIII(4)"), std::invalid_argument);   // out of range
    CHECK_THROWS_AS(parse_spec("F4 preset:FII(1)"), std::invalid_argument);    // no param allowed
    CHECK_THROWS_AS(parse_spec("F4 preset:XY"), std::invalid_argument);
}

TEST_CASE("maximal subsystems") {
    auto f4 = make_root_system({Family::F, 4});
    auto maximal = maximal_subsystems(f4);
    REQUIRE(maximal.size() == 3);
    CHECK(maximal[0].first == RemovalStep{RemovalMode::ext, 1});
    CHECK(component_names(maximal[0].second) == std::multiset<std::string>{"C3", "A1"});
    CHECK(maximal[1].first == RemovalStep{RemovalMode::ext, 2});
    CHECK(component_names(maximal[1].second) == std::multiset<std::string>{"A2", "A2"});
    CHECK(maximal[2].first == RemovalStep{RemovalMode::ext, 4});
    CHECK(component_names(maximal[2].second) == std::multiset<std::string>{"B4"});

    auto e8 = make_root_system({Family::E, 8});
    std::set<std::string> e8_comps;
    for (const auto& [step, sub] : maximal_subsystems(e8)) {
        std::string name;
        for (const auto& c : component_names(sub)) name += (name.empty() ? "" : "x") + c;
        e8_comps.insert(name);
    }
    CHECK(e8_comps.count("D8") == 1);
    CHECK(e8_comps.count("A1xE7") == 1);

    auto a3 = make_root_system({Family::A, 3});
    auto a3max = maximal_subsystems(a3);
    REQUIRE(a3max.size() == 3);
    for (const auto& [step, sub] : a3max) CHECK(step.mode == RemovalMode::node);
}

TEST_CASE("subsystem root subsets and cardinalities") {
    struct Row { const char* spec; std::size_t h_size; };
    const Row rows[] = {
        {"F4 ext:1", 10}, {"F4 ext:4", 16},
        {"E6 ext:2", 16}, {"E6 node:1", 20},
        {"E7 ext:2", 31}, {"E7 ext:7", 28}, {"E7 node:1", 36},
        {"E8 ext:1", 56}, {"E8 ext:7", 64},
    };
    for (const Row& row : rows) {
        auto sub = resolve(row.spec);
        auto sys = make_root_system(sub.spec.ambient);
        INFO(row.spec);
        CHECK(sub.roots.size() == row.h_size);
        CHECK(complement(sys, sub).size() == sys.positive.size() - row.h_size);
    }
}

TEST_CASE("component decomposition with aliases") {
    CHECK(component_names(resolve("B4 ext:4")) == std::multiset<std::string>{"D4"});
    CHECK(component_names(resolve("B4 ext:2")) == std::multiset<std::string>{"A1", "A1", "B2"});
    CHECK(component_names(resolve("B5 ext:3")) == std::multiset<std::string>{"A3", "B2"});
    CHECK(component_names(resolve("C4 ext:2")) == std::multiset<std::string>{"B2", "B2"});
    CHECK(component_names(resolve("C4 ext:1")) == std::multiset<std::string>{"A1", "C3"});
    // -theta attaches to the long simple root, so ext:1 keeps two long roots (A2)
    // while ext:2 keeps the orthogonal pair {alpha1, -theta}.
    CHECK(component_names(resolve("G2 ext:1")) == std::multiset<std::string>{"A2"});
    CHECK(component_names(resolve("G2 ext:2")) == std::multiset<std::string>{"A1", "A1"});

    auto d5_node1 = resolve("D5 node:1");
    CHECK(component_names(d5_node1) == std::multiset<std::string>{"D4"});
    CHECK(d5_node1.torus_rank == 1);
    auto d5_node5 = resolve("D5 node:5");
    CHECK(component_names(d5_node5) == std::multiset<std::string>{"A4"});
    CHECK(d5_node5.torus_rank == 1);

    auto a4_node2 = resolve("A4 node:2");
    REQUIRE(a4_node2.components.size() == 2);
    CHECK(a4_node2.components[0] == LieType{Family::A, 1});  // canonical order
    CHECK(a4_node2.components[1] == LieType{Family::A, 2});
    CHECK(a4_node2.torus_rank == 1);

    auto f4_ext1 = resolve("F4 ext:1");
    REQUIRE(f4_ext1.components.size() == 2);
    CHECK(f4_ext1.components[0] == LieType{Family::C, 3});
    CHECK(f4_ext1.components[1] == LieType{Family::A, 1});

    auto e6_ext2 = resolve("E6 ext:2");
    CHECK(component_names(e6_ext2) == std::multiset<std::string>{"A1", "A5"});
    auto e7_ext2 = resolve("E7 ext:2");
    CHECK(component_names(e7_ext2) == std::multiset<std::string>{"A1", "D6"});
    auto e8_ext6 = resolve("E8 ext:6");
    CHECK(component_names(e8_ext6) == std::multiset<std::string>{"A2", "E6"});
}

TEST_CASE("subsystems are closed root subsets") {
    for (const char* text : {"F4 ext:1", "F4 ext:4", "B4 ext:2", "C4 ext:2", "D5 node:5",
                             "E6 ext:2", "E6 node:1", "G2 ext:1"}) {
        auto sub = resolve(text);
        auto sys = make_root_system(sub.spec.ambient);
        std::set<Root> h(sub.roots.begin(), sub.roots.end());
        INFO(text);
        for (const Root& u : sub.roots)
            for (const Root& v : sub.roots) {
                Root sum(u.size());
                for (std::size_t i = 0; i < u.size(); ++i) sum[i] = u[i] + v[i];
                if (sys.is_positive_root(sum)) CHECK(h.count(sum) == 1);
            }
    }
}

TEST_CASE("iterated removals") {
    auto sub = resolve("B4 ext:4;ext:2");
    CHECK(component_names(sub) == std::multiset<std::string>{"A1", "A1", "A1", "A1"});
    CHECK(sub.torus_rank == 0);
    CHECK(sub.roots.size() == 4);

    // Same subgroup reached through different step orders.
    auto first = resolve("A5 node:2;node:3");
    auto second = resolve("A5 node:4;node:2");
    CHECK(first.roots == second.roots);
    CHECK(component_names(first) == component_names(second));
    CHECK(first.torus_rank == second.torus_rank);

    // Depth-2 inside an exceptional component.
    auto e7_then = resolve("E7 node:1;ext:3");
    CHECK(e7_then.torus_rank == 1);
    int total_rank = e7_then.torus_rank;
    for (const auto& c : e7_then.components) total_rank += c.rank;
    CHECK(total_rank == 7);
}

TEST_CASE("step traces record the renumbering") {
    auto sub = resolve("F4 ext:1");
    REQUIRE(sub.trace.size() == 1);
    const StepTrace& tr = sub.trace[0];
    CHECK(tr.removed == Root{1, 0, 0, 0});
    REQUIRE(tr.added.has_value());
    CHECK(*tr.added == Root{-2, -3, -4, -2});
    // New state: a_2, a_3, a_4 keep positions 2..4 shifted down, lowest is new.
    CHECK(tr.from_prev == std::vector<int>{2, 3, 4, 0});

    auto node = resolve("A4 node:2");
    REQUIRE(node.trace.size() == 1);
    CHECK(node.trace[0].from_prev == std::vector<int>{1, 3, 4});
    CHECK_FALSE(node.trace[0].added.has_value());
}

TEST_CASE("partition sizes always add up") {
    for (const char* text : {"A5 node:3", "B5 ext:2", "C5 ext:4", "D6 ext:3", "E7 ext:3"}) {
        auto sub = resolve(text);
        auto sys = make_root_system(sub.spec.ambient);
        CHECK(sub.roots.size() + complement(sys, sub).size() == sys.positive.size());
    }
}
