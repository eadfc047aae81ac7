#include "kron/densify.hpp"

#include <algorithm>

#include "kron/errors.hpp"

namespace kron {

const Arc& BoxNeighborhood::arc_of_coord(std::size_t i) const {
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (blocks[b].first <= i && i <= blocks[b].second) return arcs[b];
    throw PreconditionError("box: coordinate outside every block");
}

std::vector<Arc> BoxNeighborhood::coordinate_arcs() const {
    std::vector<Arc> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(arc_of_coord(i));
    return out;
}

Rat BoxNeighborhood::min_length() const {
    if (arcs.empty()) throw PreconditionError("box: no blocks");
    Rat m = arcs[0].length();
    for (const Arc& a : arcs) m = std::min(m, a.length());
    return m;
}

bool BoxNeighborhood::contains(const TorusVector& v) const {
    if (v.dim() != k) throw PreconditionError("box: dimension mismatch");
    for (std::size_t i = 0; i < k; ++i)
        if (!arc_of_coord(i).contains(v.coords[i])) return false;
    return true;
}

Int stage_modulus(const Rat& min_length) {
    // least n with 2/n < min_length, i.e. floor(2/min_length) + 1
    Rat q = Rat(2) / min_length;
    Int n;
    mpz_fdiv_q(n.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return n + 1;
}

namespace {

void compositions(std::size_t total, std::size_t parts, std::vector<std::size_t>& acc,
                  std::vector<std::vector<std::size_t>>& out) {
    if (parts == 1) {
        acc.push_back(total);
        out.push_back(acc);
        acc.pop_back();
        return;
    }
    for (std::size_t first = 1; first + (parts - 1) <= total; ++first) {
        acc.push_back(first);
        compositions(total - first, parts - 1, acc, out);
        acc.pop_back();
    }
}

}  // namespace

StagePlan enumerate_neighborhoods(std::size_t k, const std::vector<Arc>& arc_family,
                                  std::size_t max_blocks, std::size_t budget) {
    if (k == 0) throw PreconditionError("enumerate: k must be >= 1");
    if (max_blocks == 0) throw PreconditionError("enumerate: max_blocks must be >= 1");
    if (budget == 0) throw PreconditionError("enumerate: budget must be >= 1");
    if (budget > 100000) throw PreconditionError("enumerate: budget cap is 100000");
    if (arc_family.empty()) throw PreconditionError("enumerate: empty arc family");

    StagePlan plan;
    plan.k = k;

    BoxNeighborhood full;
    full.k = k;
    full.blocks = {{0, k - 1}};
    full.arcs = {Arc(Rat(0), Rat(1))};
    plan.boxes.push_back(full);

    const std::size_t bmax = std::min(max_blocks, k);
    for (std::size_t b = 1; b <= bmax && plan.boxes.size() < budget; ++b) {
        std::vector<std::vector<std::size_t>> comps;
        std::vector<std::size_t> acc;
        compositions(k, b, acc, comps);
        for (const auto& comp : comps) {
            std::vector<std::size_t> pick(b, 0);
            while (true) {
                BoxNeighborhood box;
                box.k = k;
                std::size_t lo = 0;
                for (std::size_t i = 0; i < b; ++i) {
                    box.blocks.emplace_back(lo, lo + comp[i] - 1);
                    box.arcs.push_back(arc_family[pick[i]]);
                    lo += comp[i];
                }
                if (std::find(plan.boxes.begin(), plan.boxes.end(), box) == plan.boxes.end())
                    plan.boxes.push_back(box);
                if (plan.boxes.size() >= budget) break;
                // odometer over arc choices, last block fastest
                bool overflow = false;
                std::size_t j = b;
                while (true) {
                    if (j == 0) {
                        overflow = true;
                        break;
                    }
                    --j;
                    if (++pick[j] < arc_family.size()) break;
                    pick[j] = 0;
                }
                if (overflow) break;
            }
            if (plan.boxes.size() >= budget) break;
        }
    }
    if (plan.boxes.size() < budget)
        throw PreconditionError("enumerate: budget exceeds the number of distinct neighborhoods");

    for (const BoxNeighborhood& box : plan.boxes)
        plan.n_of_stage.push_back(stage_modulus(box.min_length()));
    return plan;
}

ConstructionState make_state(const AbelianGroup& g, std::size_t k) {
    ConstructionState st;
    st.k = k;
    st.h = g.span({});
    return st;
}

namespace {

Int factorial(const Int& n) {
    if (n < 0) throw PreconditionError("factorial of a negative value");
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n.get_ui());
    return f;
}

}  // namespace

PickResult pick_witness(const AbelianGroup& g, const std::vector<GroupElement>& s,
                        const SubgroupBasis& h_prev, const Int& n_alpha) {
    const Int fact = factorial(n_alpha);
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto d = g.order_in_quotient(s[i], h_prev);
        if (!d) return {i, std::nullopt};
        if (fact % *d != 0) return {i, d};
    }
    return {std::nullopt, std::nullopt};
}

namespace {

/// Decomposition and image of s over the current map, memoized until the
/// map grows. The outer optional marks "computed", the inner one membership.
const std::optional<std::pair<std::vector<Int>, TorusVector>>& cached_image(
    const AbelianGroup& g, ConstructionState& st, const std::vector<GroupElement>& s,
    std::size_t i) {
    if (st.cache_gen != st.chosen.size()) {
        st.cache.assign(s.size(), std::nullopt);
        st.cache_gen = st.chosen.size();
    }
    if (!st.cache[i]) {
        auto combo = g.decompose(s[i], st.h);
        if (!combo) {
            st.cache[i].emplace(std::nullopt);
        } else {
            TorusCodomain cod{st.k};
            st.cache[i].emplace(
                std::make_pair(*combo, evaluate_hom_combo(cod, st.phi, *combo)));
        }
    }
    return *st.cache[i];
}

}  // namespace

void run_stage(const AbelianGroup& g, ConstructionState& state, std::size_t stage_idx,
               const BoxNeighborhood& box, const Int& n_alpha,
               const std::vector<GroupElement>& s) {
    const TorusCodomain cod{state.k};
    const PickResult pick = pick_witness(g, s, state.h, n_alpha);

    if (!pick.index) {
        // Every element of S already sits, up to n_alpha!, inside the current
        // domain. The box still needs a witness: scan S for a mapped element
        // whose image lands in it.
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto& entry = cached_image(g, state, s, i);
            if (entry && box.contains(entry->second)) {
                state.certs.push_back({stage_idx, s[i], entry->first});
                return;
            }
        }
        throw ExhaustionError(stage_idx, factorial(n_alpha),
                              "stage " + std::to_string(stage_idx) +
                                  ": no fresh witness modulo n! and no mapped element of S "
                                  "hits the box");
    }

    const GroupElement x = s[*pick.index];
    const std::vector<Arc> arcs = box.coordinate_arcs();
    const TorusSubgroup k_sub{state.k, state.phi.images};
    TorusVector f = tv_zero(state.k);

    if (!pick.order) {
        std::vector<std::pair<TorusVector, Int>> constraints;
        for (std::size_t i = 0; i < k_sub.generators.size() && constraints.size() < state.k; ++i)
            constraints.emplace_back(k_sub.generators[i], Int(1));
        f = avoid_free(arcs, k_sub, constraints, state.alloc);
        state.phi.domain_gens.push_back(x);
        state.phi.images.push_back(f);
        if (!hom_well_defined(g, cod, state.phi))
            throw CertificateError("stage " + std::to_string(stage_idx) +
                                   ": free adjunction broke well-definedness");
    } else {
        const Int m = *pick.order;
        auto combo = g.decompose(g.scale(m, x), state.h);
        if (!combo) throw Error("stage: order witness fails to decompose");
        const TorusVector f_prime = evaluate_hom_combo(cod, state.phi, *combo);
        f = avoid_with_lift(arcs, k_sub, f_prime, m);
        state.phi = extend_hom(g, cod, state.h, state.phi.images, x, f, m, state.phi);
    }

    state.chosen.push_back(x);
    state.h = g.span(state.chosen);
    std::vector<Int> combo(state.chosen.size());
    combo.back() = 1;
    state.certs.push_back({stage_idx, x, combo});
}

DensifyResult densify(const AbelianGroup& g, const std::vector<GroupElement>& s,
                      const StagePlan& plan) {
    if (plan.k == 0 || plan.boxes.empty()) throw PreconditionError("densify: empty plan");
    if (s.empty()) throw PreconditionError("densify: empty target set");
    for (const GroupElement& e : s)
        if (e.coords.size() != g.dim()) throw PreconditionError("densify: element outside G");

    ConstructionState state = make_state(g, plan.k);
    for (std::size_t idx = 0; idx < plan.boxes.size(); ++idx)
        run_stage(g, state, idx, plan.boxes[idx], plan.n_of_stage[idx], s);

    const TorusCodomain cod{plan.k};
    if (!hom_well_defined(g, cod, state.phi))
        throw CertificateError("densify: final map is not well defined");
    if (!hom_injective(g, cod, state.phi))
        throw CertificateError("densify: final map is not injective");
    return {state.phi, state.certs};
}

}  // namespace kron
