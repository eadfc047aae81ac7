#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "kron/abelian.hpp"
#include "kron/torus_subgroup.hpp"

namespace kron {

/// Growth record for the dilates nS together with collapse probes: for each
/// probe subgroup the least n (if any) with nS inside it.
struct WidenessReport {
    struct ProbeResult {
        std::size_t probe_index = 0;
        std::optional<Int> first_collapse_n;
    };
    std::vector<std::pair<Int, std::size_t>> sizes;  // (n, |nS|)
    std::vector<ProbeResult> probes;
    std::optional<std::pair<Int, std::size_t>> first_failure;  // (n, probe index)
};

WidenessReport wideness_report(const AbelianGroup& g, const std::vector<GroupElement>& s,
                               const Int& n_max,
                               const std::vector<std::vector<GroupElement>>& probes);

/// Certified upper bound for the covering radius of a finite point set in
/// T^k under the max metric. Grid centers are compared against the set in
/// floating point; the bound adds the certified evaluation error plus the
/// half-cell slack 1/(2 res), so max_gap really dominates the distance from
/// any torus point to the set.
struct CoveringReport {
    std::size_t k = 0;
    std::size_t resolution = 0;
    double grid_max = 0.0;   // max over centers of min distance to the set
    double slack = 0.0;      // half cell width plus evaluation error
    double max_gap = 0.0;    // grid_max + slack
    std::vector<std::uint8_t> hit_table;  // cell contains a point of the set
};

CoveringReport covering_radius(const std::vector<TorusVector>& points, std::size_t k,
                               std::size_t resolution);

enum class PropagationStatus { holds, fails, hypothesis_unmet };

/// Checks max_gap(nP) <= n epsilon + slack after confirming the hypothesis
/// max_gap(P) <= epsilon at the same resolution.
PropagationStatus propagation_check(const std::vector<TorusVector>& points, std::size_t k,
                                    const Int& n, double epsilon, std::size_t resolution);

}  // namespace kron
