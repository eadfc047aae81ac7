#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kron/abelian.hpp"
#include "kron/certify.hpp"
#include "kron/densify.hpp"

namespace kron {

/// Strict rational syntax: "p" or "p/q", decimal digits with an optional
/// leading minus. Anything else, floats included, is a ParseError.
Rat parse_rational(const std::string& s);
Int parse_integer(const std::string& s);
std::string rat_str(const Rat& r);

enum class SetKind { explicit_list, squares, primes };

/// Job description, file format "kron-config v1". All numbers exact.
struct JobConfig {
    // group: invariant-factor data, or a relation matrix reduced on load
    std::size_t free_rank = 0;
    std::vector<Int> factors;
    std::optional<ZMat> relations;  // rows = relations over `rel_gens` generators
    std::size_t rel_gens = 0;

    SetKind set_kind = SetKind::explicit_list;
    std::vector<std::vector<Int>> set_elems;
    Int set_bound = 0;

    std::size_t k = 1;
    std::vector<Arc> arc_family;
    std::size_t max_blocks = 1;
    std::size_t budget = 1;
    std::size_t grid = 64;
    Rat epsilon = Rat(1, 100);
    Int wideness_n = 8;
    std::vector<std::vector<std::vector<Int>>> probes;
    std::string out;

    bool operator==(const JobConfig& o) const;
};

std::string serialize_config(const JobConfig& c);
JobConfig parse_config(std::istream& in);
JobConfig parse_config_text(const std::string& text);

AbelianGroup config_group(const JobConfig& c);
std::vector<GroupElement> config_set(const JobConfig& c, const AbelianGroup& g);

/// Densify output, file format "kron-report v1". Everything needed to
/// re-check the construction from scratch: the group, the chosen domain
/// generators with their exact images, the box plan, and one certificate
/// per stage. The covering block is the only place floats appear.
struct Report {
    std::size_t k = 0;
    std::size_t free_rank = 0;
    std::vector<Int> factors;
    std::vector<GroupElement> gens;
    std::vector<TorusVector> images;
    std::vector<BoxNeighborhood> boxes;
    std::vector<Certificate> certs;
    std::optional<CoveringReport> covering;

    bool operator==(const Report& o) const;
};

std::string serialize_report(const Report& r);
Report parse_report(std::istream& in);
Report parse_report_text(const std::string& text);

/// Full re-verification: the map is well defined and injective, every box
/// has a certificate, and each certificate's combination reproduces its
/// witness in the group and lands the image inside the stage's box.
/// Throws CertificateError naming the first failure.
void verify_report(const Report& r);

}  // namespace kron
