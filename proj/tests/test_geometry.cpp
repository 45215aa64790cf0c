#include <doctest.h>

#include <map>
#include <set>

#include "hlp/geometry.hpp"

using namespace hlp;

TEST_CASE("checked_pow") {
    CHECK(checked_pow(2, 10) == 1024);
    CHECK(checked_pow(3, 4) == 81);
    CHECK(checked_pow(7, 0) == 1);
    CHECK_THROWS(checked_pow(2, 64));
}

TEST_CASE("lattice sizes") {
    LatticeSpec s = LatticeSpec::create(2, 2, 3);
    CHECK(s.digit_base == 4);
    CHECK(s.num_vertices == 64);
    CHECK(s.radius(2) == 4);
    // shells partition the nonzero vertices
    std::uint64_t total = 0, pairs = 0;
    for (std::uint32_t i = 1; i <= 3; ++i) {
        CHECK(s.shell_size(i) == 3 * checked_pow(4, i - 1));
        total += s.shell_size(i);
        pairs += s.pair_count(i);
    }
    CHECK(total == s.num_vertices - 1);
    CHECK(pairs == s.num_vertices * (s.num_vertices - 1) / 2);
    CHECK(s.ball_size(2) == 16);
    CHECK_THROWS(LatticeSpec::create(1, 1, 3));
}

TEST_CASE("hierarchical distance is an ultrametric and shell census matches") {
    LatticeSpec s = LatticeSpec::create(3, 1, 3);  // 27 vertices
    for (std::uint64_t a = 0; a < s.num_vertices; ++a) {
        std::map<std::uint64_t, std::uint64_t> census;
        for (std::uint64_t b = 0; b < s.num_vertices; ++b) {
            std::uint64_t dab = hier_distance(a, b, s);
            CHECK(dab == hier_distance(b, a, s));
            CHECK((dab == 0) == (a == b));
            if (a != b) ++census[hier_level(a, b, s)];
            for (std::uint64_t c = 0; c < s.num_vertices; ++c)
                CHECK(hier_distance(a, c, s) <=
                      std::max(dab, hier_distance(b, c, s)));
        }
        for (std::uint32_t i = 1; i <= 3; ++i)
            CHECK(census[i] == s.shell_size(i));
    }
}

TEST_CASE("pair codec is a bijection onto each shell") {
    for (auto [L, d, n] : {std::tuple<std::uint32_t, std::uint32_t,
                                      std::uint32_t>{2, 1, 4},
                           {3, 2, 2},
                           {2, 3, 2}}) {
        LatticeSpec s = LatticeSpec::create(L, d, n);
        for (std::uint32_t i = 1; i <= n; ++i) {
            std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
            for (std::uint64_t k = 0; k < s.pair_count(i); ++k) {
                auto [a, b] = decode_pair(i, k, s);
                CHECK(a < b);
                CHECK(hier_level(a, b, s) == i);
                CHECK(encode_pair(i, a, b, s) == k);
                seen.insert({a, b});
            }
            CHECK(seen.size() == s.pair_count(i));
        }
    }
}

TEST_CASE("same-shell distance census matches brute force") {
    LatticeSpec s = LatticeSpec::create(2, 2, 3);
    for (std::uint32_t i = 1; i <= 3; ++i) {
        // fix the first point of shell i found by scanning
        std::uint64_t x = 0;
        for (std::uint64_t v = 1; v < s.num_vertices; ++v)
            if (hier_level(0, v, s) == i) {
                x = v;
                break;
            }
        std::map<std::uint32_t, std::uint64_t> census;
        for (std::uint64_t y = 1; y < s.num_vertices; ++y) {
            if (y == x || hier_level(0, y, s) != i) continue;
            ++census[hier_level(x, y, s)];
        }
        std::uint64_t total = 0;
        for (std::uint32_t k = 1; k <= i; ++k) {
            CHECK(same_shell_distance_count(i, k, s) == census[k]);
            total += census[k];
        }
        CHECK(total == s.shell_size(i) - 1);
    }
}

TEST_CASE("torus geometry") {
    TorusSpec t = TorusSpec::create(5, 2);
    CHECK(t.num_vertices == 25);
    for (std::uint64_t v = 0; v < t.num_vertices; ++v)
        CHECK(torus_index(torus_coords(v, t), t) == v);

    std::map<std::uint32_t, std::uint64_t> census;
    for (std::uint64_t b = 1; b < t.num_vertices; ++b) {
        std::uint32_t dist = torus_distance(0, b, t);
        CHECK(dist == torus_distance(b, 0, t));
        CHECK(dist >= 1);
        CHECK(dist <= t.max_distance());
        ++census[dist];
    }
    for (std::uint32_t k = 1; k <= t.max_distance(); ++k)
        CHECK(census[k] == torus_class_count(k, t));

    TorusSpec even = TorusSpec::create(4, 1);
    CHECK(torus_class_count(2, even) == 1);  // antipodal class
    CHECK(torus_distance(0, 2, even) == 2);
    CHECK(torus_distance(1, 3, even) == 2);
}
