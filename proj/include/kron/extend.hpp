#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kron/abelian.hpp"
#include "kron/errors.hpp"
#include "kron/torus_subgroup.hpp"

namespace kron {

/// Codomain adapter: an abelian group presented by another AbelianGroup.
struct GroupCodomain {
    using Elem = GroupElement;
    AbelianGroup group;

    Elem add(const Elem& a, const Elem& b) const { return group.add(a, b); }
    Elem scale(const Int& n, const Elem& a) const { return group.scale(n, a); }
    Elem zero() const { return group.zero(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    bool member(const Elem& v, const std::vector<Elem>& gens) const {
        return group.member(v, group.span(gens));
    }
    ZMat relation_lattice(const std::vector<Elem>& elems) const {
        ZMat m(group.dim(), elems.size() + group.invariant_factors().size());
        for (std::size_t j = 0; j < elems.size(); ++j)
            for (std::size_t i = 0; i < group.dim(); ++i) m.at(i, j) = elems[j].coords[i];
        for (std::size_t i = 0; i < group.invariant_factors().size(); ++i)
            m.at(group.free_rank() + i, elems.size() + i) = group.invariant_factors()[i];
        ZMat ker = kernel_lattice(m);
        ZMat out(elems.size(), ker.cols());
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = 0; j < ker.cols(); ++j) out.at(i, j) = ker.at(i, j);
        return out;
    }
};

/// Codomain adapter: T^k with symbolic sqrt-prime coordinates.
struct TorusCodomain {
    using Elem = TorusVector;
    std::size_t k = 0;

    Elem add(const Elem& a, const Elem& b) const { return tv_add(a, b); }
    Elem scale(const Int& n, const Elem& a) const { return tv_scale(n, a); }
    Elem zero() const { return tv_zero(k); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    bool member(const Elem& v, const std::vector<Elem>& gens) const {
        return member_t(v, TorusSubgroup{k, gens});
    }
    ZMat relation_lattice(const std::vector<Elem>& elems) const {
        return torus_relation_lattice(k, elems);
    }
};

/// Homomorphism given on generators: domain_gens[i] |-> images[i].
template <class Cod>
struct HomSpec {
    std::vector<GroupElement> domain_gens;
    std::vector<typename Cod::Elem> images;
};

struct ExtensionReport {
    bool a_holds = false;  // m x in K and m x* in K*
    bool b_holds = false;  // n x not in K and n x* not in K* for 1 <= n < m
    bool c_holds = false;  // psi(m x) = m x*
    std::string detail;
    bool ok() const { return a_holds && b_holds && c_holds; }
};

template <class Cod>
typename Cod::Elem evaluate_hom(const AbelianGroup& g, const Cod& cod, const HomSpec<Cod>& phi,
                                const GroupElement& x) {
    const SubgroupBasis span = g.span(phi.domain_gens);
    auto combo = g.decompose(x, span);
    if (!combo) throw PreconditionError("evaluate_hom: element outside the domain subgroup");
    typename Cod::Elem out = cod.zero();
    for (std::size_t i = 0; i < combo->size(); ++i)
        if ((*combo)[i] != 0) out = cod.add(out, cod.scale((*combo)[i], phi.images[i]));
    return out;
}

template <class Cod>
typename Cod::Elem evaluate_hom_combo(const Cod& cod, const HomSpec<Cod>& phi,
                                      const std::vector<Int>& combo) {
    typename Cod::Elem out = cod.zero();
    for (std::size_t i = 0; i < combo.size() && i < phi.images.size(); ++i)
        if (combo[i] != 0) out = cod.add(out, cod.scale(combo[i], phi.images[i]));
    return out;
}

/// Every integer relation among the domain generators must map to the
/// corresponding relation among the images.
template <class Cod>
bool hom_well_defined(const AbelianGroup& g, const Cod& cod, const HomSpec<Cod>& phi) {
    GroupCodomain dom{g};
    ZMat rel = dom.relation_lattice(phi.domain_gens);
    for (std::size_t j = 0; j < rel.cols(); ++j) {
        std::vector<Int> c(rel.rows());
        for (std::size_t i = 0; i < rel.rows(); ++i) c[i] = rel.at(i, j);
        if (!cod.eq(evaluate_hom_combo(cod, phi, c), cod.zero())) return false;
    }
    return true;
}

/// Trivial kernel: every relation among the images is already a relation
/// among the domain generators.
template <class Cod>
bool hom_injective(const AbelianGroup& g, const Cod& cod, const HomSpec<Cod>& phi) {
    ZMat rel = cod.relation_lattice(phi.images);
    for (std::size_t j = 0; j < rel.cols(); ++j) {
        GroupElement acc = g.zero();
        for (std::size_t i = 0; i < rel.rows(); ++i)
            if (rel.at(i, j) != 0)
                acc = g.add(acc, g.scale(rel.at(i, j), phi.domain_gens[i]));
        if (!g.is_zero(acc)) return false;
    }
    return true;
}

template <class Cod>
ExtensionReport check_extension_preconditions(const AbelianGroup& g, const Cod& cod,
                                              const SubgroupBasis& k_dom,
                                              const std::vector<typename Cod::Elem>& k_star,
                                              const GroupElement& x,
                                              const typename Cod::Elem& x_star, const Int& m,
                                              const HomSpec<Cod>& psi) {
    if (m < 2) throw PreconditionError("extension: m must be >= 2");
    if (psi.domain_gens != k_dom.generators || psi.images.size() != k_dom.generators.size())
        throw PreconditionError("extension: psi must be given on K's generators");
    ExtensionReport rep;
    const GroupElement mx = g.scale(m, x);
    const typename Cod::Elem mxs = cod.scale(m, x_star);
    rep.a_holds = g.member(mx, k_dom) && cod.member(mxs, k_star);
    if (!rep.a_holds) rep.detail += "(a) fails: mx or mx* misses the subgroup; ";
    rep.b_holds = true;
    for (Int n = 1; n < m && rep.b_holds; ++n) {
        if (g.member(g.scale(n, x), k_dom) || cod.member(cod.scale(n, x_star), k_star)) {
            rep.b_holds = false;
            rep.detail += "(b) fails at n = " + n.get_str() + "; ";
        }
    }
    if (rep.a_holds) {
        auto combo = g.decompose(mx, k_dom);
        if (!combo) throw Error("extension: mx in K but not decomposable");
        combo->resize(psi.images.size());
        rep.c_holds = cod.eq(evaluate_hom_combo(cod, psi, *combo), mxs);
        if (!rep.c_holds) rep.detail += "(c) fails: psi(mx) != m x*; ";
    }
    return rep;
}

/// The unique extension phi of psi to K + <x> with phi(x) = x*, by
/// phi(h + k x) = psi(h) + k x*. Canonical decomposition: k reduced into
/// [0, m), h recovered by subtraction.
template <class Cod>
HomSpec<Cod> extend_hom(const AbelianGroup& g, const Cod& cod, const SubgroupBasis& k_dom,
                        const std::vector<typename Cod::Elem>& k_star, const GroupElement& x,
                        const typename Cod::Elem& x_star, const Int& m, const HomSpec<Cod>& psi) {
    ExtensionReport rep = check_extension_preconditions(g, cod, k_dom, k_star, x, x_star, m, psi);
    if (!rep.ok()) throw PreconditionError("extension preconditions fail: " + rep.detail);
    HomSpec<Cod> phi;
    phi.domain_gens = psi.domain_gens;
    phi.domain_gens.push_back(x);
    phi.images = psi.images;
    phi.images.push_back(x_star);
    if (!hom_well_defined(g, cod, phi))
        throw Error("extension: well-definedness violated despite preconditions");
    return phi;
}

}  // namespace kron
