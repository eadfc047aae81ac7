#pragma once

#include <vector>

#include "kron/torus.hpp"

namespace kron {

/// Point of T^k, all coordinates over the common sqrt-prime basis.
struct TorusVector {
    std::vector<TorusElement> coords;

    std::size_t dim() const { return coords.size(); }
    bool operator==(const TorusVector& o) const { return coords == o.coords; }
    bool operator!=(const TorusVector& o) const { return !(*this == o); }
};

TorusVector tv_zero(std::size_t k);
TorusVector tv_add(const TorusVector& a, const TorusVector& b);
TorusVector tv_scale(const Int& n, const TorusVector& a);

/// Finitely generated subgroup of T^k, given by its generators. Membership
/// is decided exactly by integer lattice reduction over the combined
/// coefficient space (rational parts with mod-1 slack, sqrt coefficients
/// matched exactly).
struct TorusSubgroup {
    std::size_t k = 0;
    std::vector<TorusVector> generators;
};

bool member_t(const TorusVector& v, const TorusSubgroup& sub);

/// Coefficients over the generators expressing v, if v is a member.
std::optional<std::vector<Int>> decompose_t(const TorusVector& v, const TorusSubgroup& sub);

/// Lattice of integer relations among the given vectors: columns c with
/// sum_i c_i f_i = 0 in T^k.
ZMat torus_relation_lattice(std::size_t k, const std::vector<TorusVector>& vecs);

/// Lemma-4.2-style solver: f with f(gamma) in its arc for every gamma and
/// n f not in K for all n >= 1. Each constraint (h, n) is discharged on its
/// own coordinate via the arc solver with z = 0 and m = n (k'+1); on top of
/// that one coordinate is perturbed by a freshly allocated sqrt marker, which
/// makes the all-n conclusion a symbolic fact. Verified up to n_check.
TorusVector avoid_free(const std::vector<Arc>& arcs, const TorusSubgroup& k_sub,
                       const std::vector<std::pair<TorusVector, Int>>& constraints,
                       PrimeAllocator& alloc, const Int& n_check = 10);

/// Lemma-4.3-style solver: f with m f = f_prime (exactly), every coordinate
/// in its arc, and n f not in K for 1 <= n < m, the last verified by
/// member_t. Constraint pairs from a finite truncation of K x {1..m-1} guide
/// the lift choice; if the guided choice fails verification, a deterministic
/// exhaustive search over the in-arc lift vectors runs before the hard error.
TorusVector avoid_with_lift(const std::vector<Arc>& arcs, const TorusSubgroup& k_sub,
                            const TorusVector& f_prime, const Int& m);

}  // namespace kron
