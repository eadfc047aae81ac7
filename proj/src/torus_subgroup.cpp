#include "kron/torus_subgroup.hpp"

#include <algorithm>
#include <set>

#include "kron/errors.hpp"

namespace kron {

TorusVector tv_zero(std::size_t k) { return TorusVector{std::vector<TorusElement>(k)}; }

TorusVector tv_add(const TorusVector& a, const TorusVector& b) {
    if (a.dim() != b.dim()) throw PreconditionError("torus vector dimension mismatch");
    TorusVector r;
    r.coords.reserve(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r.coords.push_back(a.coords[i].add(b.coords[i]));
    return r;
}

TorusVector tv_scale(const Int& n, const TorusVector& a) {
    TorusVector r;
    r.coords.reserve(a.dim());
    for (const TorusElement& c : a.coords) r.coords.push_back(c.scale(n));
    return r;
}

namespace {

struct MembershipSystem {
    ZMat a;
    std::vector<Int> rhs;
    std::size_t ngen;
};

// Integer linear system whose solvability over Z is exactly "v is an integer
// combination of the generators modulo the integer lattice": one mod-1 row
// per coordinate (with a slack unknown) plus exact rows per sqrt marker.
MembershipSystem membership_system(const TorusVector& v, const TorusSubgroup& sub) {
    const std::size_t s = sub.generators.size(), k = sub.k;
    if (v.dim() != k) throw PreconditionError("torus vector/subgroup dimension mismatch");
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    for (std::size_t j = 0; j < k; ++j) {
        std::set<unsigned long> markers;
        for (const auto& g : sub.generators)
            for (const auto& [p, c] : g.coords[j].coeffs()) markers.insert(p);
        for (const auto& [p, c] : v.coords[j].coeffs()) markers.insert(p);

        std::vector<Rat> row(s + k);
        for (std::size_t i = 0; i < s; ++i) row[i] = sub.generators[i].coords[j].rational_part();
        row[s + j] = -1;  // mod-1 slack
        rows.push_back(std::move(row));
        rhs.push_back(v.coords[j].rational_part());

        for (unsigned long p : markers) {
            std::vector<Rat> mrow(s + k);
            for (std::size_t i = 0; i < s; ++i) {
                auto it = sub.generators[i].coords[j].coeffs().find(p);
                if (it != sub.generators[i].coords[j].coeffs().end()) mrow[i] = it->second;
            }
            rows.push_back(std::move(mrow));
            auto it = v.coords[j].coeffs().find(p);
            rhs.push_back(it != v.coords[j].coeffs().end() ? it->second : Rat(0));
        }
    }
    MembershipSystem sys;
    sys.ngen = s;
    sys.a = ZMat(rows.size(), s + k);
    sys.rhs.resize(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        Int d = 1;
        for (const Rat& q : rows[r]) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den().get_mpz_t());
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), rhs[r].get_den().get_mpz_t());
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            Rat q = rows[r][c] * Rat(d);
            q.canonicalize();
            sys.a.at(r, c) = q.get_num();
        }
        Rat q = rhs[r] * Rat(d);
        q.canonicalize();
        sys.rhs[r] = q.get_num();
    }
    return sys;
}

}  // namespace

bool member_t(const TorusVector& v, const TorusSubgroup& sub) {
    MembershipSystem sys = membership_system(v, sub);
    return lattice_contains(column_echelon(std::move(sys.a)), sys.rhs);
}

std::optional<std::vector<Int>> decompose_t(const TorusVector& v, const TorusSubgroup& sub) {
    MembershipSystem sys = membership_system(v, sub);
    auto x = lattice_solve(column_echelon(std::move(sys.a)), sys.rhs);
    if (!x) return std::nullopt;
    x->resize(sys.ngen);
    return x;
}

namespace {

ZMat mat_mul(const ZMat& a, const ZMat& b) {
    ZMat r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t l = 0; l < a.cols(); ++l) r.at(i, j) += a.at(i, l) * b.at(l, j);
    return r;
}

}  // namespace

ZMat torus_relation_lattice(std::size_t k, const std::vector<TorusVector>& vecs) {
    const std::size_t s = vecs.size();
    // exact sqrt-coefficient rows
    std::vector<std::vector<Rat>> mrows;
    for (std::size_t j = 0; j < k; ++j) {
        std::set<unsigned long> markers;
        for (const auto& f : vecs)
            for (const auto& [p, c] : f.coords[j].coeffs()) markers.insert(p);
        for (unsigned long p : markers) {
            std::vector<Rat> row(s);
            for (std::size_t i = 0; i < s; ++i) {
                auto it = vecs[i].coords[j].coeffs().find(p);
                if (it != vecs[i].coords[j].coeffs().end()) row[i] = it->second;
            }
            mrows.push_back(std::move(row));
        }
    }
    ZMat m(mrows.size(), s);
    for (std::size_t r = 0; r < mrows.size(); ++r) {
        Int d = 1;
        for (const Rat& q : mrows[r]) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den().get_mpz_t());
        for (std::size_t c = 0; c < s; ++c) {
            Rat q = mrows[r][c] * Rat(d);
            q.canonicalize();
            m.at(r, c) = q.get_num();
        }
    }
    ZMat b = mrows.empty() ? ZMat::identity(s) : kernel_lattice(m);
    if (b.cols() == 0) return ZMat(s, 0);

    // rational parts of B-combinations must be integral coordinatewise
    Int d = 1;
    for (std::size_t j = 0; j < k; ++j)
        for (const auto& f : vecs)
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(),
                    f.coords[j].rational_part().get_den().get_mpz_t());
    ZMat rmat(k, s);  // d * rational parts
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < s; ++i) {
            Rat q = vecs[i].coords[j].rational_part() * Rat(d);
            q.canonicalize();
            rmat.at(j, i) = q.get_num();
        }
    ZMat c = mat_mul(rmat, b);  // k x b.cols
    ZMat sys(k, b.cols() + k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) sys.at(i, j) = c.at(i, j);
        sys.at(i, b.cols() + i) = d;
    }
    ZMat ker = kernel_lattice(sys);
    ZMat t(b.cols(), ker.cols());
    for (std::size_t i = 0; i < b.cols(); ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j) t.at(i, j) = ker.at(i, j);
    return mat_mul(b, t);
}

TorusVector avoid_free(const std::vector<Arc>& arcs, const TorusSubgroup& k_sub,
                       const std::vector<std::pair<TorusVector, Int>>& constraints,
                       PrimeAllocator& alloc, const Int& n_check) {
    const std::size_t k = arcs.size();
    if (k == 0) throw PreconditionError("avoid_free: no coordinates");
    if (constraints.size() > k)
        throw PreconditionError("avoid_free: more constraints than coordinates");
    Rat lmin = arcs[0].length();
    for (const Arc& a : arcs) lmin = std::min(lmin, a.length());
    Rat two_over_lmin = Rat(2) / lmin;
    two_over_lmin.canonicalize();
    Int kprime;
    mpz_fdiv_q(kprime.get_mpz_t(), two_over_lmin.get_num().get_mpz_t(),
               two_over_lmin.get_den().get_mpz_t());
    kprime += 1;  // smallest k' with 2/k' < min arc length

    TorusVector f = tv_zero(k);
    const TorusElement zero;
    for (std::size_t gamma = 0; gamma < k; ++gamma) {
        if (gamma < constraints.size()) {
            const auto& [h, n] = constraints[gamma];
            if (n < 1) throw PreconditionError("avoid_free: constraint n must be >= 1");
            f.coords[gamma] = solve_arc(arcs[gamma], zero, h.coords[gamma], n * (kprime + 1), n);
        } else {
            Rat mid = arcs[gamma].start() + arcs[gamma].length() / 2;
            mid.canonicalize();
            f.coords[gamma] = TorusElement(mid);
        }
    }

    // fresh marker on coordinate 0: <f> has infinite order and misses K entirely
    const unsigned long fresh = alloc.next();
    Rat eps(1, 8);
    bool placed = false;
    for (int iter = 0; iter < 64 && !placed; ++iter, eps /= 2) {
        TorusElement cand = f.coords[0].add(TorusElement::irrational(fresh, eps));
        if (arcs[0].contains(cand)) {
            f.coords[0] = cand;
            placed = true;
        }
    }
    if (!placed) throw Error("avoid_free: could not place the fresh marker inside the arc");

    for (std::size_t gamma = 0; gamma < constraints.size(); ++gamma) {
        const auto& [h, n] = constraints[gamma];
        if (f.coords[gamma].scale(n) == h.coords[gamma])
            throw CertificateError("avoid_free: constraint violated after construction");
    }
    for (Int n = 1; n <= n_check; ++n)
        if (member_t(tv_scale(n, f), k_sub))
            throw CertificateError("avoid_free: n*f landed in K during verification");
    return f;
}

namespace {

struct TvLess {
    bool operator()(const TorusVector& a, const TorusVector& b) const {
        return std::lexicographical_compare(a.coords.begin(), a.coords.end(),
                                            b.coords.begin(), b.coords.end());
    }
};

// First few distinct elements of K, by increasing coefficient box.
std::vector<TorusVector> truncate_subgroup(const TorusSubgroup& k_sub, std::size_t want) {
    std::vector<TorusVector> out;
    std::set<TorusVector, TvLess> seen;
    const std::size_t s = k_sub.generators.size();
    for (long radius = 0; radius <= 2 && out.size() < want; ++radius) {
        std::vector<long> c(s, -radius);
        bool done = s == 0 && radius > 0;
        while (!done && out.size() < want) {
            long maxabs = 0;
            for (long v : c) maxabs = std::max(maxabs, std::abs(v));
            if (maxabs == radius || radius == 0) {
                TorusVector h = tv_zero(k_sub.k);
                for (std::size_t i = 0; i < s; ++i)
                    h = tv_add(h, tv_scale(Int(c[i]), k_sub.generators[i]));
                if (seen.insert(h).second) out.push_back(h);
            }
            if (radius == 0) break;
            std::size_t i = 0;
            while (i < s && c[i] == radius) c[i++] = -radius;
            if (i == s) {
                done = true;
            } else {
                ++c[i];
            }
        }
        if (s == 0) break;
    }
    return out;
}

bool lift_vector_ok(const std::vector<Arc>& arcs, const TorusSubgroup& k_sub,
                    const TorusVector& f, const Int& m) {
    for (Int n = 1; n < m; ++n)
        if (member_t(tv_scale(n, f), k_sub)) return false;
    return true;
}

}  // namespace

TorusVector avoid_with_lift(const std::vector<Arc>& arcs, const TorusSubgroup& k_sub,
                            const TorusVector& f_prime, const Int& m) {
    const std::size_t k = arcs.size();
    if (k == 0) throw PreconditionError("avoid_with_lift: no coordinates");
    if (m < 2) throw PreconditionError("avoid_with_lift: m must be >= 2");
    for (const Arc& a : arcs)
        if (!a.is_full() && Rat(2) / Rat(m) >= a.length())
            throw PreconditionError("avoid_with_lift: need 2/m < l(V) for every coordinate");
    if (f_prime.dim() != k) throw PreconditionError("avoid_with_lift: dimension mismatch");
    if (!member_t(f_prime, k_sub)) throw PreconditionError("avoid_with_lift: f' not in K");

    // admissible lifts per coordinate
    std::vector<std::vector<Int>> valid(k);
    for (std::size_t gamma = 0; gamma < k; ++gamma) {
        for (Int j = 0; j < m; ++j)
            if (arcs[gamma].contains(lift_of(f_prime.coords[gamma], m, j)))
                valid[gamma].push_back(j);
        if (valid[gamma].size() < 2)
            throw Error("avoid_with_lift: fewer than two admissible lifts on a coordinate");
    }

    // truncation of K x {1..m-1}, one constraint pair per coordinate
    const std::size_t mm = m.fits_ulong_p() ? m.get_ui() : k + 1;
    std::size_t want_elems = (k + mm - 2) / (mm - 1);
    std::vector<TorusVector> trunc = truncate_subgroup(k_sub, std::max<std::size_t>(want_elems, 1));
    std::vector<std::pair<const TorusVector*, Int>> pairs;
    for (const auto& h : trunc)
        for (Int n = 1; n < m && pairs.size() < k; ++n) pairs.emplace_back(&h, n);
    if (pairs.size() > k) pairs.resize(k);

    TorusVector f = tv_zero(k);
    const TorusElement zero;
    // full arcs with m = 2 sit outside solve_arc's domain; pick the lift
    // dodging the constraint by direct enumeration instead
    auto choose = [&](std::size_t gamma, const TorusElement& z_prime, const Int& n) {
        if (m > 2) return solve_arc(arcs[gamma], f_prime.coords[gamma], z_prime, m, n);
        for (Int j = 0; j < m; ++j) {
            TorusElement y = lift_of(f_prime.coords[gamma], m, j);
            if (y.scale(n) != z_prime) return y;
        }
        throw Error("avoid_with_lift: every lift hits the constraint");
    };
    for (std::size_t gamma = 0; gamma < k; ++gamma) {
        if (gamma < pairs.size()) {
            f.coords[gamma] =
                choose(gamma, pairs[gamma].first->coords[gamma], pairs[gamma].second);
        } else {
            f.coords[gamma] = choose(gamma, zero, Int(1));
        }
    }
    if (tv_scale(m, f) != f_prime) throw Error("avoid_with_lift: m f != f' after construction");
    if (lift_vector_ok(arcs, k_sub, f, m)) return f;

    // guided choice failed: deterministic search over all in-arc lift vectors
    std::vector<std::size_t> idx(k, 0);
    std::size_t tried = 0;
    const std::size_t cap = 20000;
    while (true) {
        TorusVector cand = tv_zero(k);
        for (std::size_t gamma = 0; gamma < k; ++gamma)
            cand.coords[gamma] = lift_of(f_prime.coords[gamma], m, valid[gamma][idx[gamma]]);
        if (lift_vector_ok(arcs, k_sub, cand, m)) {
            if (tv_scale(m, cand) != f_prime)
                throw Error("avoid_with_lift: m f != f' in search path");
            return cand;
        }
        if (++tried >= cap) break;
        std::size_t g = 0;
        while (g < k && ++idx[g] == valid[g].size()) idx[g++] = 0;
        if (g == k) break;
    }
    throw CertificateError(
        "avoid_with_lift: n f in K for some n < m for every admissible lift "
        "(insufficient truncation)");
}

}  // namespace kron
