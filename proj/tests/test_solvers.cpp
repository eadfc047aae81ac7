#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "kron/errors.hpp"
#include "kron/torus_subgroup.hpp"

using namespace kron;

namespace {

TorusElement rat(long p, long q) { return TorusElement(Rat(p, q)); }
TorusElement root(unsigned long prime, long p, long q) {
    return TorusElement::irrational(prime, Rat(p, q));
}

TorusVector vec(std::vector<TorusElement> xs) { return TorusVector{std::move(xs)}; }

// brute force: v equals some combination of the generators with small coefficients
bool brute_member(const TorusVector& v, const TorusSubgroup& sub, long bound) {
    std::vector<long> c(sub.generators.size(), -bound);
    if (c.empty()) {
        for (const auto& x : v.coords)
            if (x != TorusElement()) return false;
        return true;
    }
    while (true) {
        TorusVector acc = tv_zero(sub.k);
        for (std::size_t i = 0; i < c.size(); ++i)
            acc = tv_add(acc, tv_scale(Int(c[i]), sub.generators[i]));
        if (acc == v) return true;
        std::size_t i = 0;
        while (i < c.size() && ++c[i] > bound) c[i++] = -bound;
        if (i == c.size()) return false;
    }
}

}  // namespace

TEST_CASE("member_t on the stated examples") {
    TorusSubgroup k1{1, {vec({rat(1, 4)})}};
    CHECK(member_t(vec({rat(1, 2)}), k1));
    CHECK_FALSE(member_t(vec({rat(1, 3)}), k1));

    TorusSubgroup k2{2, {vec({TorusElement(), rat(1, 5)})}};
    CHECK_FALSE(member_t(vec({root(2, 1, 2), TorusElement()}), k2));
}

TEST_CASE("member_t matches brute force on small subgroups") {
    std::vector<TorusSubgroup> subs = {
        {1, {vec({rat(1, 6)})}},
        {2, {vec({rat(1, 4), rat(1, 3)})}},
        {2, {vec({rat(1, 2), TorusElement()}), vec({rat(1, 6), rat(1, 6)})}},
        {3, {vec({root(2, 1, 4), rat(1, 2), TorusElement()}),
             vec({TorusElement(), rat(1, 3), root(3, 1, 6)})}},
    };
    for (const auto& sub : subs) {
        // probe every combination plus shifted non-members
        std::vector<long> c(sub.generators.size(), -3);
        while (true) {
            TorusVector acc = tv_zero(sub.k);
            for (std::size_t i = 0; i < c.size(); ++i)
                acc = tv_add(acc, tv_scale(Int(c[i]), sub.generators[i]));
            CHECK(member_t(acc, sub));
            TorusVector shifted = acc;
            shifted.coords[0] = shifted.coords[0].add(rat(1, 7));
            CHECK(member_t(shifted, sub) == brute_member(shifted, sub, 12));
            std::size_t i = 0;
            while (i < c.size() && ++c[i] > 3) c[i++] = -3;
            if (i == c.size()) break;
        }
    }
}

TEST_CASE("decompose_t returns witnessing coefficients") {
    TorusSubgroup sub{2, {vec({rat(1, 4), root(2, 1, 3)}), vec({rat(1, 2), rat(1, 5)})}};
    TorusVector v = tv_add(tv_scale(3, sub.generators[0]), tv_scale(-2, sub.generators[1]));
    auto combo = decompose_t(v, sub);
    REQUIRE(combo.has_value());
    TorusVector acc = tv_zero(2);
    for (std::size_t i = 0; i < combo->size(); ++i)
        acc = tv_add(acc, tv_scale((*combo)[i], sub.generators[i]));
    CHECK(acc == v);
    CHECK_FALSE(decompose_t(vec({root(5, 1, 2), TorusElement()}), sub).has_value());
}

TEST_CASE("torus_relation_lattice finds exactly the relations") {
    // generators 1/4 and 1/2 in T^1: relations generated by (0,2) and (4,-2)-ish bases
    std::vector<TorusVector> gens = {vec({rat(1, 4)}), vec({rat(1, 2)})};
    ZMat rel = torus_relation_lattice(1, gens);
    REQUIRE(rel.rows() == 2);
    CHECK(rel.cols() >= 2);
    for (std::size_t j = 0; j < rel.cols(); ++j) {
        TorusVector acc = tv_zero(1);
        for (std::size_t i = 0; i < 2; ++i)
            acc = tv_add(acc, tv_scale(rel.at(i, j), gens[i]));
        CHECK(acc == tv_zero(1));
    }
    // an irrational generator admits no relation with a rational one
    std::vector<TorusVector> gens2 = {vec({root(2, 1, 1)}), vec({rat(1, 3)})};
    ZMat rel2 = torus_relation_lattice(1, gens2);
    for (std::size_t j = 0; j < rel2.cols(); ++j) CHECK(rel2.at(0, j) == 0);
}

TEST_CASE("avoid_free with trivial K hands back an escaping vector") {
    PrimeAllocator alloc;
    std::vector<Arc> arcs = {Arc(Rat(0), Rat(1)), Arc(Rat(0), Rat(1))};
    TorusSubgroup k{2, {}};
    TorusVector f = avoid_free(arcs, k, {}, alloc);
    bool has_irrational = false;
    for (const auto& x : f.coords) has_irrational |= !x.is_rational();
    CHECK(has_irrational);
    for (Int n = 1; n <= 10; ++n) CHECK_FALSE(member_t(tv_scale(n, f), k));
}

TEST_CASE("avoid_free honours arcs and constraints") {
    PrimeAllocator alloc;
    std::vector<Arc> arcs = {Arc(Rat(1, 8), Rat(1, 2)), Arc(Rat(1, 4), Rat(1, 2))};
    TorusSubgroup k{2, {vec({rat(1, 2), TorusElement()})}};
    std::vector<std::pair<TorusVector, Int>> constraints = {{k.generators[0], Int(1)},
                                                            {k.generators[0], Int(2)}};
    TorusVector f = avoid_free(arcs, k, constraints, alloc);
    CHECK(arcs[0].contains(f.coords[0]));
    CHECK(arcs[1].contains(f.coords[1]));
    for (Int n = 1; n <= 10; ++n) CHECK_FALSE(member_t(tv_scale(n, f), k));
}

TEST_CASE("avoid_free rejects more constraints than coordinates") {
    PrimeAllocator alloc;
    std::vector<Arc> arcs = {Arc(Rat(0), Rat(1))};
    TorusSubgroup k{1, {vec({rat(1, 2)})}};
    std::vector<std::pair<TorusVector, Int>> constraints = {
        {k.generators[0], Int(1)}, {k.generators[0], Int(2)}, {k.generators[0], Int(3)}};
    CHECK_THROWS_AS(avoid_free(arcs, k, constraints, alloc), PreconditionError);
}

TEST_CASE("avoid_with_lift divides by m while escaping K") {
    TorusSubgroup k{1, {vec({rat(1, 3)})}};
    TorusVector f = avoid_with_lift({Arc(Rat(0), Rat(1))}, k, vec({rat(1, 3)}), 3);
    CHECK(tv_scale(3, f) == vec({rat(1, 3)}));
    CHECK_FALSE(member_t(f, k));
    CHECK_FALSE(member_t(tv_scale(2, f), k));
    // the least admissible lift of 1/3 is 1/9
    CHECK(f == vec({rat(1, 9)}));
}

TEST_CASE("avoid_with_lift full-arc m=2 case") {
    TorusSubgroup k{1, {}};
    TorusVector f = avoid_with_lift({Arc(Rat(0), Rat(1))}, k, tv_zero(1), 2);
    CHECK(f == vec({rat(1, 2)}));
}

TEST_CASE("avoid_with_lift precondition and postcondition checks") {
    TorusSubgroup k{1, {vec({rat(1, 5)})}};
    CHECK_THROWS_AS(avoid_with_lift({Arc(Rat(0), Rat(1, 2))}, k, vec({rat(1, 5)}), 4),
                    PreconditionError);  // 2/4 = 1/2 not < 1/2
    CHECK_THROWS_AS(avoid_with_lift({Arc(Rat(0), Rat(1))}, k, vec({rat(1, 7)}), 3),
                    PreconditionError);  // f' outside K
}

TEST_CASE("avoid_with_lift across multiple coordinates") {
    TorusSubgroup k{3, {vec({rat(1, 2), rat(1, 4), TorusElement()}),
                        vec({TorusElement(), rat(1, 3), rat(1, 3)})}};
    TorusVector fp = tv_add(tv_scale(2, k.generators[0]), tv_scale(1, k.generators[1]));
    std::vector<Arc> arcs = {Arc(Rat(0), Rat(1, 2)), Arc(Rat(1, 4), Rat(1, 2)),
                             Arc(Rat(1, 2), Rat(1, 2))};
    TorusVector f = avoid_with_lift(arcs, k, fp, 5);
    CHECK(tv_scale(5, f) == fp);
    for (std::size_t i = 0; i < 3; ++i) CHECK(arcs[i].contains(f.coords[i]));
    for (Int n = 1; n < 5; ++n) CHECK_FALSE(member_t(tv_scale(n, f), k));
}
