#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kron/zmat.hpp"

namespace kron {

/// Element of a finitely generated abelian group, as an integer coordinate
/// vector (free coordinates first, then one coordinate per invariant factor,
/// reduced into [0, d_i)).
struct GroupElement {
    std::vector<Int> coords;

    bool operator==(const GroupElement& o) const { return coords == o.coords; }
    bool operator<(const GroupElement& o) const { return coords < o.coords; }
};

struct SubgroupBasis;

/// A group Z^r + Z/d_1 + ... + Z/d_t in invariant-factor form, with the
/// exact arithmetic the construction needs: subgroup spans in integer normal
/// form, decidable membership and orders in quotients.
class AbelianGroup {
public:
    AbelianGroup(std::size_t free_rank, std::vector<Int> invariant_factors);

    /// Reduce an arbitrary relation matrix (rows = relations over `ngens`
    /// generators) to invariant-factor form.
    static AbelianGroup from_relations(std::size_t ngens, const ZMat& relations);

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Int>& invariant_factors() const { return factors_; }
    std::size_t dim() const { return free_rank_ + factors_.size(); }
    bool operator==(const AbelianGroup& o) const {
        return free_rank_ == o.free_rank_ && factors_ == o.factors_;
    }

    GroupElement element(std::vector<Int> coords) const;
    GroupElement zero() const { return element(std::vector<Int>(dim())); }
    bool is_zero(const GroupElement& g) const;

    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement scale(const Int& n, const GroupElement& a) const;

    /// { n s : s in S }, duplicates removed, stable canonical (sorted) order.
    std::vector<GroupElement> scale_set(const Int& n, const std::vector<GroupElement>& s) const;

    SubgroupBasis span(const std::vector<GroupElement>& gens) const;
    bool member(const GroupElement& g, const SubgroupBasis& b) const;

    /// Coefficients over b's generators expressing g, if g is in the span.
    std::optional<std::vector<Int>> decompose(const GroupElement& g, const SubgroupBasis& b) const;

    /// Least n >= 1 with n x in the subgroup, nullopt when infinite. Decided
    /// via the normal form, never by unbounded search.
    std::optional<Int> order_in_quotient(const GroupElement& x, const SubgroupBasis& b) const;

    AbelianGroup torsion_part() const { return AbelianGroup(0, factors_); }

private:
    void check(const GroupElement& g) const;

    std::size_t free_rank_;
    std::vector<Int> factors_;
};

/// Subgroup in normal form: the generators as given plus a column echelon
/// basis of the lifted lattice (generator columns followed by the torsion
/// relation columns d_i e_i).
struct SubgroupBasis {
    std::vector<GroupElement> generators;
    Echelon lattice;
    std::size_t ngen = 0;  // generator columns in the lattice matrix
};

}  // namespace kron
