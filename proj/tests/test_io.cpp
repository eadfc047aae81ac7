#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kron/errors.hpp"
#include "kron/io.hpp"

using namespace kron;

namespace {

std::vector<Int> iv(std::initializer_list<long> xs) {
    std::vector<Int> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

JobConfig sample_config() {
    JobConfig c;
    c.free_rank = 1;
    c.factors = iv({6});
    c.set_kind = SetKind::explicit_list;
    c.set_elems = {{Int(1), Int(0)}, {Int(2), Int(3)}};
    c.k = 2;
    c.arc_family = {Arc(Rat(0), Rat(1, 2)), Arc(Rat(1, 2), Rat(1, 2))};
    c.max_blocks = 2;
    c.budget = 5;
    c.grid = 32;
    c.epsilon = Rat(3, 100);
    c.wideness_n = 4;
    c.probes = {{{Int(2), Int(0)}}};
    c.out = "out.rep";
    return c;
}

}  // namespace

TEST_CASE("strict rational parsing") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-7/2") == Rat(-7, 2));
    CHECK(parse_rational("5") == Rat(5));
    CHECK(parse_rational("6/4") == Rat(3, 2));  // canonicalized
    CHECK_THROWS_AS(parse_rational("0.5"), ParseError);
    CHECK_THROWS_AS(parse_rational("1e3"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("+2"), ParseError);
    CHECK_THROWS_AS(parse_integer("2.0"), ParseError);
}

TEST_CASE("config round-trips through its text form") {
    JobConfig c = sample_config();
    CHECK(parse_config_text(serialize_config(c)) == c);

    JobConfig sq;
    sq.free_rank = 1;
    sq.set_kind = SetKind::squares;
    sq.set_bound = 50;
    sq.k = 1;
    sq.arc_family = {Arc(Rat(0), Rat(1))};
    CHECK(parse_config_text(serialize_config(sq)) == sq);

    JobConfig rel;
    rel.set_kind = SetKind::primes;
    rel.set_bound = 13;
    rel.rel_gens = 2;
    ZMat m(1, 2);
    m.at(0, 0) = 4;
    m.at(0, 1) = -2;
    rel.relations = m;
    rel.arc_family = {Arc(Rat(1, 3), Rat(1, 3))};
    CHECK(parse_config_text(serialize_config(rel)) == rel);
}

TEST_CASE("config parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_config_text("kron-config v2\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_config_text("kron-config v1\n"), ParseError);  // missing end
    CHECK_THROWS_AS(parse_config_text("kron-config v1\nwobble 3\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_config_text("kron-config v1\narc 0.5 1/2\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_config_text("kron-config v1\ngroup 1\nend\n"), ParseError);
}

TEST_CASE("config drives group and set construction") {
    JobConfig c = sample_config();
    AbelianGroup g = config_group(c);
    CHECK(g == AbelianGroup(1, iv({6})));
    auto s = config_set(c, g);
    REQUIRE(s.size() == 2);
    CHECK(s[1] == g.element(iv({2, 3})));

    JobConfig rel;
    rel.rel_gens = 1;
    ZMat m(1, 1);
    m.at(0, 0) = 6;
    rel.relations = m;
    CHECK(config_group(rel) == AbelianGroup(0, iv({6})));

    JobConfig sq;
    sq.free_rank = 1;
    sq.set_kind = SetKind::squares;
    sq.set_bound = 4;
    auto squares = config_set(sq, config_group(sq));
    REQUIRE(squares.size() == 4);
    CHECK(squares[3] == config_group(sq).element(iv({16})));

    JobConfig pr;
    pr.free_rank = 1;
    pr.set_kind = SetKind::primes;
    pr.set_bound = 10;
    CHECK(config_set(pr, config_group(pr)).size() == 4);  // 2 3 5 7
}

TEST_CASE("report round-trips byte for byte") {
    AbelianGroup z(1, {});
    Report r;
    r.k = 1;
    r.free_rank = 1;
    r.gens = {z.element(iv({1}))};
    r.images = {TorusVector{{TorusElement(Rat(1, 2)).add(
        TorusElement::irrational(2, Rat(1, 8)))}}};
    BoxNeighborhood full;
    full.k = 1;
    full.blocks = {{0, 0}};
    full.arcs = {Arc(Rat(0), Rat(1))};
    r.boxes = {full};
    r.certs = {{0, z.element(iv({1})), iv({1})}};
    CoveringReport cov;
    cov.k = 1;
    cov.resolution = 4;
    cov.grid_max = 0.125;
    cov.slack = 0.1250000001;
    cov.max_gap = 0.2500000001;
    cov.hit_table = {1, 0, 1, 0};
    r.covering = cov;

    const std::string text = serialize_report(r);
    Report back = parse_report_text(text);
    CHECK(back == r);
    CHECK(serialize_report(back) == text);
}

TEST_CASE("verify_report accepts the valid sample and rejects tampering") {
    AbelianGroup z(1, {});
    Report r;
    r.k = 1;
    r.free_rank = 1;
    r.gens = {z.element(iv({1}))};
    r.images = {TorusVector{{TorusElement(Rat(1, 2)).add(
        TorusElement::irrational(2, Rat(1, 8)))}}};
    BoxNeighborhood full;
    full.k = 1;
    full.blocks = {{0, 0}};
    full.arcs = {Arc(Rat(0), Rat(1))};
    BoxNeighborhood low;
    low.k = 1;
    low.blocks = {{0, 0}};
    low.arcs = {Arc(Rat(6767, 10000), Rat(1, 10000))};
    r.boxes = {full, low};
    // 1 * gen has image 1/2 + sqrt(2)/8 = 0.67677..., inside the thin arc
    r.certs = {{0, z.element(iv({1})), iv({1})}, {1, z.element(iv({1})), iv({1})}};
    verify_report(r);

    SUBCASE("perturbing an image breaks a stage certificate") {
        Report bad = r;
        bad.images[0].coords[0] = bad.images[0].coords[0].add(TorusElement(Rat(1, 1000)));
        try {
            verify_report(bad);
            FAIL("expected certificate failure");
        } catch (const CertificateError& e) {
            CHECK(std::string(e.what()).find("stage") != std::string::npos);
        }
    }
    SUBCASE("zeroing an image breaks injectivity") {
        Report bad = r;
        bad.images[0] = tv_zero(1);
        CHECK_THROWS_WITH_AS(verify_report(bad), "injectivity failure", CertificateError);
    }
    SUBCASE("wrong witness combination is caught") {
        Report bad = r;
        bad.certs[0].combo = iv({2});
        CHECK_THROWS_AS(verify_report(bad), CertificateError);
    }
    SUBCASE("uncovered boxes are caught") {
        Report bad = r;
        bad.certs.pop_back();
        CHECK_THROWS_AS(verify_report(bad), CertificateError);
    }
}
