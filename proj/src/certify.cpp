#include "kron/certify.hpp"

#include <cmath>

#include "kron/errors.hpp"

namespace kron {

WidenessReport wideness_report(const AbelianGroup& g, const std::vector<GroupElement>& s,
                               const Int& n_max,
                               const std::vector<std::vector<GroupElement>>& probes) {
    if (n_max < 1) throw PreconditionError("wideness: n_max must be >= 1");
    if (s.empty()) throw PreconditionError("wideness: empty set");

    WidenessReport rep;
    rep.probes.resize(probes.size());
    std::vector<SubgroupBasis> spans;
    spans.reserve(probes.size());
    for (std::size_t p = 0; p < probes.size(); ++p) {
        rep.probes[p].probe_index = p;
        spans.push_back(g.span(probes[p]));
    }

    for (Int n = 1; n <= n_max; ++n) {
        const std::vector<GroupElement> ns = g.scale_set(n, s);
        rep.sizes.emplace_back(n, ns.size());
        for (std::size_t p = 0; p < probes.size(); ++p) {
            if (rep.probes[p].first_collapse_n) continue;
            bool inside = true;
            for (const GroupElement& e : ns)
                if (!g.member(e, spans[p])) {
                    inside = false;
                    break;
                }
            if (inside) {
                rep.probes[p].first_collapse_n = n;
                if (!rep.first_failure) rep.first_failure = {n, p};
            }
        }
    }
    return rep;
}

namespace {

struct ApproxPoint {
    std::vector<double> coord;  // canonical representatives, wrapped into [0,1)
};

double circ_dist(double a, double b) {
    double d = std::fabs(a - b);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

}  // namespace

CoveringReport covering_radius(const std::vector<TorusVector>& points, std::size_t k,
                               std::size_t resolution) {
    if (points.empty()) throw PreconditionError("covering: empty point set");
    if (k == 0) throw PreconditionError("covering: k must be >= 1");
    if (resolution == 0) throw PreconditionError("covering: resolution must be >= 1");
    double cellsd = 1.0;
    for (std::size_t i = 0; i < k; ++i) cellsd *= static_cast<double>(resolution);
    if (cellsd > 2e7) throw PreconditionError("covering: grid too fine");
    const std::size_t cells = static_cast<std::size_t>(cellsd);

    std::vector<ApproxPoint> pts(points.size());
    double err = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].dim() != k) throw PreconditionError("covering: dimension mismatch");
        pts[i].coord.resize(k);
        for (std::size_t j = 0; j < k; ++j) {
            double v, e;
            points[i].coords[j].approx(v, e);
            v -= std::floor(v);
            pts[i].coord[j] = v;
            err = std::max(err, e);
        }
    }

    CoveringReport rep;
    rep.k = k;
    rep.resolution = resolution;
    rep.hit_table.assign(cells, 0);

    for (const ApproxPoint& p : pts) {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < k; ++j) {
            auto c = static_cast<std::size_t>(p.coord[j] * resolution);
            if (c >= resolution) c = resolution - 1;
            idx = idx * resolution + c;
        }
        rep.hit_table[idx] = 1;
    }

    std::vector<std::size_t> digit(k, 0);
    std::vector<double> center(k);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        for (std::size_t j = 0; j < k; ++j)
            center[j] = (static_cast<double>(digit[j]) + 0.5) / resolution;
        double dmin = 1.0;
        for (const ApproxPoint& p : pts) {
            double d = 0.0;
            for (std::size_t j = 0; j < k; ++j)
                d = std::max(d, circ_dist(center[j], p.coord[j]));
            dmin = std::min(dmin, d);
        }
        rep.grid_max = std::max(rep.grid_max, dmin);
        std::size_t j = k;
        while (j > 0) {
            --j;
            if (++digit[j] < resolution) break;
            digit[j] = 0;
        }
    }

    rep.slack = 0.5 / static_cast<double>(resolution) + err + 1e-12;
    rep.max_gap = rep.grid_max + rep.slack;
    return rep;
}

PropagationStatus propagation_check(const std::vector<TorusVector>& points, std::size_t k,
                                    const Int& n, double epsilon, std::size_t resolution) {
    if (n < 1) throw PreconditionError("propagation: n must be >= 1");
    const CoveringReport base = covering_radius(points, k, resolution);
    if (base.max_gap > epsilon) return PropagationStatus::hypothesis_unmet;

    std::vector<TorusVector> scaled;
    scaled.reserve(points.size());
    for (const TorusVector& p : points) scaled.push_back(tv_scale(n, p));
    const CoveringReport dil = covering_radius(scaled, k, resolution);
    const double bound = n.get_d() * epsilon + dil.slack;
    return dil.max_gap <= bound ? PropagationStatus::holds : PropagationStatus::fails;
}

}  // namespace kron
