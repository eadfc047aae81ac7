#pragma once

#include <optional>
#include <vector>

#include "kron/abelian.hpp"
#include "kron/extend.hpp"
#include "kron/torus.hpp"
#include "kron/torus_subgroup.hpp"

namespace kron {

/// Product neighborhood in T^k: a partition of {0..k-1} into intervals with
/// one arc per block. The finite analog of the paper-style box family.
struct BoxNeighborhood {
    std::size_t k = 0;
    std::vector<std::pair<std::size_t, std::size_t>> blocks;  // inclusive [lo, hi]
    std::vector<Arc> arcs;                                    // parallel to blocks

    const Arc& arc_of_coord(std::size_t i) const;
    std::vector<Arc> coordinate_arcs() const;
    Rat min_length() const;
    bool contains(const TorusVector& v) const;

    bool operator==(const BoxNeighborhood& o) const {
        return k == o.k && blocks == o.blocks && arcs == o.arcs;
    }
};

/// Ordered stage enumeration: boxes[0] is always the full-space box; each
/// stage carries the least n with 2/n < min block arc length.
struct StagePlan {
    std::size_t k = 0;
    std::vector<BoxNeighborhood> boxes;
    std::vector<Int> n_of_stage;
};

/// Least n with 2/n strictly below the given arc length.
Int stage_modulus(const Rat& min_length);

/// Deterministic enumeration of `budget` distinct boxes: interval partitions
/// of {0..k-1} into at most max_blocks blocks crossed with arc assignments
/// from the family, full-space box first. Throws when the budget exceeds the
/// number of distinct neighborhoods.
StagePlan enumerate_neighborhoods(std::size_t k, const std::vector<Arc>& arc_family,
                                  std::size_t max_blocks, std::size_t budget);

/// Per-stage witness record: an element of S inside the current domain whose
/// image lies in the stage's box; combo expresses it over the chosen
/// generators at certificate time.
struct Certificate {
    std::size_t stage = 0;
    GroupElement witness;
    std::vector<Int> combo;
};

struct ConstructionState {
    std::size_t k = 0;
    std::vector<GroupElement> chosen;  // the x_alpha, in stage order
    SubgroupBasis h;                   // span(chosen)
    HomSpec<TorusCodomain> phi;        // gens == chosen
    std::vector<Certificate> certs;
    PrimeAllocator alloc;

    // per-element decomposition/image cache, valid while phi is unchanged
    std::size_t cache_gen = static_cast<std::size_t>(-1);
    std::vector<std::optional<std::optional<std::pair<std::vector<Int>, TorusVector>>>> cache;
};

ConstructionState make_state(const AbelianGroup& g, std::size_t k);

struct PickResult {
    std::optional<std::size_t> index;  // position in S
    std::optional<Int> order;          // order in quotient; nullopt = infinite
};

/// First s in S (input order) with n_alpha! s outside h_prev, decided through
/// the order in the quotient. A finite order d qualifies iff d does not
/// divide n_alpha!; any qualifying d exceeds n_alpha.
PickResult pick_witness(const AbelianGroup& g, const std::vector<GroupElement>& s,
                        const SubgroupBasis& h_prev, const Int& n_alpha);

/// One stage of the recursion: pick a fresh witness and route through the
/// free or the lift solver, or fall back to an already-mapped element of
/// S whose image hits the box. Throws ExhaustionError when neither exists.
void run_stage(const AbelianGroup& g, ConstructionState& state, std::size_t stage_idx,
               const BoxNeighborhood& box, const Int& n_alpha,
               const std::vector<GroupElement>& s);

struct DensifyResult {
    HomSpec<TorusCodomain> phi;
    std::vector<Certificate> certs;
};

/// Run every stage of the plan; the returned homomorphism is verified
/// injective and every box carries a certificate.
DensifyResult densify(const AbelianGroup& g, const std::vector<GroupElement>& s,
                      const StagePlan& plan);

}  // namespace kron
