#include "kron/abelian.hpp"

#include <algorithm>

#include "kron/errors.hpp"

namespace kron {

AbelianGroup::AbelianGroup(std::size_t free_rank, std::vector<Int> invariant_factors)
    : free_rank_(free_rank), factors_(std::move(invariant_factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2) throw PreconditionError("invariant factor < 2");
        if (i > 0 && factors_[i] % factors_[i - 1] != 0)
            throw PreconditionError("invariant factors must form a divisibility chain");
    }
}

AbelianGroup AbelianGroup::from_relations(std::size_t ngens, const ZMat& relations) {
    if (relations.cols() != ngens) throw PreconditionError("relation matrix width != generator count");
    std::vector<Int> inv = smith_invariants(relations);
    std::size_t ones = 0;
    std::vector<Int> factors;
    for (const Int& d : inv) {
        if (d == 1)
            ++ones;
        else if (d != 0)
            factors.push_back(d);
    }
    std::size_t nonzero = 0;
    for (const Int& d : inv)
        if (d != 0) ++nonzero;
    const std::size_t free_rank = ngens - nonzero;
    (void)ones;
    return AbelianGroup(free_rank, std::move(factors));
}

void AbelianGroup::check(const GroupElement& g) const {
    if (g.coords.size() != dim()) throw PreconditionError("element/presentation mismatch");
}

GroupElement AbelianGroup::element(std::vector<Int> coords) const {
    if (coords.size() != dim()) throw PreconditionError("element/presentation mismatch");
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        Int& c = coords[free_rank_ + i];
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), factors_[i].get_mpz_t());
    }
    return GroupElement{std::move(coords)};
}

bool AbelianGroup::is_zero(const GroupElement& g) const {
    check(g);
    for (const Int& c : g.coords)
        if (c != 0) return false;
    return true;
}

GroupElement AbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
    check(a);
    check(b);
    std::vector<Int> c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = a.coords[i] + b.coords[i];
    return element(std::move(c));
}

GroupElement AbelianGroup::neg(const GroupElement& a) const { return scale(-1, a); }

GroupElement AbelianGroup::scale(const Int& n, const GroupElement& a) const {
    check(a);
    std::vector<Int> c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = n * a.coords[i];
    return element(std::move(c));
}

std::vector<GroupElement> AbelianGroup::scale_set(const Int& n, const std::vector<GroupElement>& s) const {
    if (n < 1) throw PreconditionError("scale_set requires n >= 1");
    std::vector<GroupElement> out;
    out.reserve(s.size());
    for (const GroupElement& g : s) out.push_back(scale(n, g));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SubgroupBasis AbelianGroup::span(const std::vector<GroupElement>& gens) const {
    ZMat m(dim(), gens.size() + factors_.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        check(gens[j]);
        for (std::size_t i = 0; i < dim(); ++i) m.at(i, j) = gens[j].coords[i];
    }
    for (std::size_t i = 0; i < factors_.size(); ++i)
        m.at(free_rank_ + i, gens.size() + i) = factors_[i];
    SubgroupBasis b;
    b.generators = gens;
    b.ngen = gens.size();
    b.lattice = column_echelon(std::move(m));
    return b;
}

bool AbelianGroup::member(const GroupElement& g, const SubgroupBasis& b) const {
    check(g);
    return lattice_contains(b.lattice, g.coords);
}

std::optional<std::vector<Int>> AbelianGroup::decompose(const GroupElement& g, const SubgroupBasis& b) const {
    check(g);
    auto x = lattice_solve(b.lattice, g.coords);
    if (!x) return std::nullopt;
    x->resize(b.ngen);  // drop torsion-relation multipliers
    return x;
}

std::optional<Int> AbelianGroup::order_in_quotient(const GroupElement& x, const SubgroupBasis& b) const {
    check(x);
    std::vector<Rat> v(dim());
    for (std::size_t i = 0; i < dim(); ++i) v[i] = Rat(x.coords[i]);
    return order_multiplier(b.lattice, v);
}

}  // namespace kron
