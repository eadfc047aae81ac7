#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kron/certify.hpp"
#include "kron/errors.hpp"

using namespace kron;

namespace {

std::vector<Int> iv(std::initializer_list<long> xs) {
    std::vector<Int> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

TorusVector pt(long p, long q) { return TorusVector{{TorusElement(Rat(p, q))}}; }

}  // namespace

TEST_CASE("wideness on a torsion-free set is flat") {
    AbelianGroup z(1, {});
    std::vector<GroupElement> s;
    for (long n = 1; n <= 100; ++n) s.push_back(z.element(iv({n})));
    auto rep = wideness_report(z, s, 5, {});
    REQUIRE(rep.sizes.size() == 5);
    for (const auto& [n, size] : rep.sizes) CHECK(size == 100);
    CHECK_FALSE(rep.first_failure.has_value());
}

TEST_CASE("wideness flags the torsion collapse") {
    // (Z/2)^3 x Z with every vector ending in 1: 2S is a single point
    AbelianGroup g(1, iv({2, 2, 2}));
    std::vector<GroupElement> s;
    for (long mask = 0; mask < 8; ++mask)
        s.push_back(g.element(iv({1, mask & 1, (mask >> 1) & 1, (mask >> 2) & 1})));
    auto rep = wideness_report(g, s, 2, {{std::vector<GroupElement>{g.element(iv({2, 0, 0, 0}))}}});
    CHECK(rep.sizes[0] == std::pair<Int, std::size_t>{1, 8});
    CHECK(rep.sizes[1] == std::pair<Int, std::size_t>{2, 1});
    REQUIRE(rep.probes.size() == 1);
    CHECK(rep.probes[0].first_collapse_n == Int(2));
    REQUIRE(rep.first_failure.has_value());
    CHECK(rep.first_failure->first == 2);
}

TEST_CASE("probing with S itself collapses at n = 1") {
    AbelianGroup z(1, {});
    std::vector<GroupElement> s = {z.element(iv({2})), z.element(iv({3}))};
    auto rep = wideness_report(z, s, 3, {s});
    CHECK(rep.probes[0].first_collapse_n == Int(1));
}

TEST_CASE("covering radius of the symmetric four-point set") {
    std::vector<TorusVector> pts = {pt(0, 1), pt(1, 4), pt(1, 2), pt(3, 4)};
    auto rep = covering_radius(pts, 1, 64);
    CHECK(rep.max_gap <= 0.125 + rep.slack + 1e-9);
    CHECK(rep.max_gap >= rep.grid_max);
    CHECK(rep.hit_table.size() == 64);
    int hits = 0;
    for (auto h : rep.hit_table) hits += h;
    CHECK(hits == 4);
}

TEST_CASE("covering radius validates input") {
    CHECK_THROWS_AS(covering_radius({}, 1, 8), PreconditionError);
    CHECK_THROWS_AS(covering_radius({pt(0, 1)}, 1, 0), PreconditionError);
    CHECK_THROWS_AS(covering_radius({pt(0, 1)}, 0, 4), PreconditionError);
    CHECK_THROWS_AS(covering_radius({TorusVector{{TorusElement(), TorusElement()}}}, 2, 6000),
                    PreconditionError);  // 6000^2 cells over the cap
}

TEST_CASE("covering radius in two dimensions wraps around") {
    // single point at the origin: the farthest torus point is (1/2, 1/2)
    std::vector<TorusVector> pts = {TorusVector{{TorusElement(), TorusElement()}}};
    auto rep = covering_radius(pts, 2, 16);
    CHECK(rep.grid_max <= 0.5);
    CHECK(rep.grid_max > 0.4);
}

TEST_CASE("propagation holds for a dense enough set") {
    std::vector<TorusVector> pts;
    for (long i = 0; i < 16; ++i) pts.push_back(pt(i, 16));
    CHECK(propagation_check(pts, 1, 2, 1.0 / 16, 128) == PropagationStatus::holds);
    CHECK(propagation_check(pts, 1, 1, 1.0 / 16, 128) == PropagationStatus::holds);
}

TEST_CASE("propagation reports an unmet hypothesis for sparse sets") {
    std::vector<TorusVector> pts = {pt(0, 1)};
    CHECK(propagation_check(pts, 1, 2, 1.0 / 16, 64) == PropagationStatus::hypothesis_unmet);
}
