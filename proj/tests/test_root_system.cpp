#include <catch2/catch_amalgamated.hpp>

#include "rootk/root_system.hpp"

#include "exceptional_fixtures.hpp"
#include "oracles.hpp"

using namespace rootk;

namespace {

std::vector<LieType> sweep_types(int max_rank = 8) {
    std::vector<LieType> out;
    for (int n = 1; n <= max_rank; ++n) out.push_back({Family::A, n});
    for (int n = 2; n <= max_rank; ++n) out.push_back({Family::B, n});
    for (int n = 2; n <= max_rank; ++n) out.push_back({Family::C, n});
    for (int n = 4; n <= max_rank; ++n) out.push_back({Family::D, n});
    out.push_back({Family::G, 2});
    out.push_back({Family::F, 4});
    for (int n = 6; n <= 8; ++n) out.push_back({Family::E, n});
    return out;
}

template <typename Fixture>
std::set<Root> fixture_set(const Fixture& fix) {
    std::set<Root> out;
    for (const auto& row : fix) out.insert(Root(row.begin(), row.end()));
    return out;
}

}  // namespace

TEST_CASE("type parsing and validation") {
    CHECK(parse_type("A3") == LieType{Family::A, 3});
    CHECK(parse_type("f4") == LieType{Family::F, 4});
    CHECK(to_string(LieType{Family::E, 7}) == "E7");
    CHECK_THROWS_AS(parse_type("X2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_type("A"), std::invalid_argument);
    CHECK_THROWS_AS(validate_type({Family::A, 0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_type({Family::D, 3}), std::invalid_argument);
    CHECK_THROWS_AS(validate_type({Family::E, 5}), std::invalid_argument);
    CHECK_THROWS_AS(validate_type({Family::F, 5}), std::invalid_argument);
    CHECK_THROWS_AS(validate_type({Family::A, 13}), std::invalid_argument);
    CHECK_NOTHROW(validate_type({Family::A, 13}, 20));
}

TEST_CASE("cartan matrices") {
    CHECK(cartan_matrix({Family::A, 2}) == IntMatrix{{2, -1}, {-1, 2}});
    CHECK(cartan_matrix({Family::B, 2}) == IntMatrix{{2, -2}, {-1, 2}});
    CHECK(cartan_matrix({Family::G, 2}) == IntMatrix{{2, -1}, {-3, 2}});
    CHECK(cartan_matrix({Family::F, 4}) ==
          IntMatrix{{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}});
    CHECK(cartan_matrix({Family::C, 3}) == IntMatrix{{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}});

    for (LieType t : sweep_types()) {
        auto sys = make_root_system(t);
        const int n = t.rank;
        for (int i = 0; i < n; ++i) {
            CHECK(sys.cartan[i][i] == 2);
            for (int j = 0; j < n; ++j) {
                // Symmetrizability ties the Cartan and Gram data together.
                CHECK(Rational(sys.cartan[i][j]) * sys.gram[j][j] / 2 == sys.gram[i][j]);
                CHECK(sys.gram[i][j] == sys.gram[j][i]);
                if (i != j) CHECK(sys.cartan[i][j] <= 0);
            }
        }
    }
}

TEST_CASE("positive roots of B2") {
    auto sys = make_root_system({Family::B, 2});
    std::vector<Root> want{{0, 1}, {1, 0}, {1, 1}, {1, 2}};
    CHECK(sys.positive == want);
    CHECK(sys.highest == Root{1, 2});
    CHECK(sys.extended_adjacency == std::vector<int>{2});
}

TEST_CASE("positive root counts match the closed forms") {
    for (LieType t : sweep_types()) {
        auto sys = make_root_system(t);
        const int n = t.rank;
        std::size_t want = 0;
        switch (t.family) {
            case Family::A: want = n * (n + 1) / 2; break;
            case Family::B:
            case Family::C: want = n * n; break;
            case Family::D: want = n * (n - 1); break;
            case Family::G: want = 6; break;
            case Family::F: want = 24; break;
            case Family::E: want = n == 6 ? 36 : (n == 7 ? 63 : 120); break;
        }
        INFO(to_string(t));
        CHECK(sys.positive.size() == want);
    }
}

TEST_CASE("exceptional root tables") {
    auto f4 = make_root_system({Family::F, 4});
    CHECK(std::set<Root>(f4.positive.begin(), f4.positive.end()) == fixture_set(fixtures::f4_positive));
    CHECK(f4.highest == Root{2, 3, 4, 2});
    CHECK(f4.extended_adjacency == std::vector<int>{1});

    auto e6 = make_root_system({Family::E, 6});
    CHECK(std::set<Root>(e6.positive.begin(), e6.positive.end()) == fixture_set(fixtures::e6_positive));
    CHECK(e6.highest == Root{1, 2, 3, 2, 2, 1});
    CHECK(e6.extended_adjacency == std::vector<int>{4});

    auto e7 = make_root_system({Family::E, 7});
    CHECK(std::set<Root>(e7.positive.begin(), e7.positive.end()) == fixture_set(fixtures::e7_positive));
    CHECK(e7.highest == Root{1, 2, 3, 4, 3, 2, 2});
    CHECK(e7.extended_adjacency == std::vector<int>{6});

    auto e8 = make_root_system({Family::E, 8});
    CHECK(std::set<Root>(e8.positive.begin(), e8.positive.end()) == fixture_set(fixtures::e8_positive));
    CHECK(e8.highest == Root{2, 4, 6, 5, 4, 3, 2, 3});
    CHECK(e8.extended_adjacency == std::vector<int>{7});
}

TEST_CASE("marks and extended adjacency of the classical chains") {
    auto b3 = make_root_system({Family::B, 3});
    CHECK(b3.marks == std::vector<int>{1, 2, 2});
    CHECK(b3.extended_adjacency == std::vector<int>{2});

    auto c4 = make_root_system({Family::C, 4});
    CHECK(c4.marks == std::vector<int>{2, 2, 2, 1});
    CHECK(c4.extended_adjacency == std::vector<int>{1});

    auto d5 = make_root_system({Family::D, 5});
    CHECK(d5.marks == std::vector<int>{1, 2, 2, 1, 1});
    CHECK(d5.extended_adjacency == std::vector<int>{2});

    auto a4 = make_root_system({Family::A, 4});
    CHECK(a4.marks == std::vector<int>{1, 1, 1, 1});
    CHECK(a4.extended_adjacency == std::vector<int>{1, 4});

    auto a1 = make_root_system({Family::A, 1});
    CHECK(a1.extended_adjacency == std::vector<int>{1});

    auto g2 = make_root_system({Family::G, 2});
    CHECK(g2.marks == std::vector<int>{3, 2});
    CHECK(g2.extended_adjacency == std::vector<int>{2});
}

TEST_CASE("highest root dominates and has maximal height") {
    for (LieType t : sweep_types()) {
        auto sys = make_root_system(t);
        for (const Root& r : sys.positive) {
            CHECK(height(r) <= height(sys.highest));
            for (int i = 0; i < t.rank; ++i) CHECK(r[i] <= sys.highest[i]);
        }
    }
}

TEST_CASE("closure under simple reflections") {
    for (LieType t : sweep_types(6)) {
        auto sys = make_root_system(t);
        for (const Root& r : sys.positive)
            for (int i = 0; i < t.rank; ++i) CHECK(sys.is_root(sys.reflect_simple(r, i)));
        // Reflections in arbitrary roots also permute the root set.
        for (std::size_t s = 0; s < sys.positive.size(); s += 3)
            for (const Root& r : sys.positive)
                CHECK(sys.is_root(sys.reflect(r, sys.positive[s])));
    }
}

TEST_CASE("rank-2 spans cut out rank-2 subsystems") {
    for (LieType t : {LieType{Family::B, 3}, LieType{Family::G, 2}, LieType{Family::F, 4}}) {
        auto sys = make_root_system(t);
        const auto& pos = sys.positive;
        for (std::size_t i = 0; i < pos.size(); ++i)
            for (std::size_t j = i + 1; j < pos.size(); ++j) {
                if (oracle::rational_rank_int({pos[i], pos[j]}) < 2) continue;
                int in_span = 0;
                for (const Root& r : pos)
                    if (oracle::rational_rank_int({pos[i], pos[j], r}) == 2) ++in_span;
                INFO(to_string(t) << " pair " << format_root(pos[i]) << "," << format_root(pos[j]));
                CHECK((in_span == 2 || in_span == 3 || in_span == 4 || in_span == 6));
            }
    }
}

TEST_CASE("ambient coordinates realize the classical conventions") {
    for (LieType t : sweep_types()) {
        if (!is_classical(t.family)) continue;
        auto sys = make_root_system(t);
        std::set<std::vector<int>> image;
        for (const Root& r : sys.positive) image.insert(sys.ambient(r));
        CHECK(image == oracle::classical_positive_ambient(t.family, t.rank));

        // The Gram form agrees with the coordinate dot product up to the
        // family-wide normalization factor (2 for type C).
        const int scale = t.family == Family::C ? 2 : 1;
        for (std::size_t i = 0; i < sys.positive.size(); i += 5)
            for (std::size_t j = 0; j < sys.positive.size(); j += 7) {
                auto u = sys.ambient(sys.positive[i]), v = sys.ambient(sys.positive[j]);
                long long dot = 0;
                for (std::size_t c = 0; c < u.size(); ++c) dot += (long long)u[c] * v[c];
                CHECK(Rational(dot) == scale * sys.inner(sys.positive[i], sys.positive[j]));
            }
    }
    CHECK_THROWS_AS(make_root_system({Family::F, 4}).ambient({1, 0, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("weyl orders") {
    CHECK(weyl_order({Family::A, 3}) == 24);
    CHECK(weyl_order({Family::F, 4}) == 1152);
    CHECK(weyl_order({Family::E, 6}) == 51840);
    CHECK(weyl_order({Family::E, 7}) == 2903040);
    CHECK(weyl_order({Family::E, 8}) == 696729600);
    CHECK(weyl_order({Family::G, 2}) == 12);

    BigInt fact = 1;
    for (int n = 1; n <= 8; ++n) {
        fact *= n;  // n!
        BigInt pow2 = BigInt(1) << n;
        CHECK(weyl_order({Family::A, n}) == fact * (n + 1));
        if (n >= 2) {
            CHECK(weyl_order({Family::B, n}) == pow2 * fact);
            CHECK(weyl_order({Family::C, n}) == pow2 * fact);
        }
        if (n >= 4) CHECK(weyl_order({Family::D, n}) == (pow2 >> 1) * fact);
    }
}

TEST_CASE("weyl orders against generic-vector orbits") {
    for (LieType t : {LieType{Family::A, 1}, LieType{Family::A, 2}, LieType{Family::A, 3},
                      LieType{Family::B, 2}, LieType{Family::B, 3}, LieType{Family::C, 3},
                      LieType{Family::D, 4}, LieType{Family::G, 2}, LieType{Family::F, 4},
                      LieType{Family::E, 6}}) {
        INFO(to_string(t));
        CHECK(weyl_order(t) == oracle::orbit_weyl_order(cartan_matrix(t)));
    }
}

TEST_CASE("root formatting") {
    CHECK(format_root({1, 2, 3, 1}) == "1231");
    CHECK(format_root({0, 0, 0, 1}) == "0001");
    CHECK(format_root({1, -2, 10}) == "(1,-2,10)");
    CHECK(format_root({-1, 0}) == "(-1,0)");
}
