#include "kron/zmat.hpp"

#include <stdexcept>

namespace kron {

Rat rat_mod1(const Rat& q) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    Rat r = q - Rat(fl);
    r.canonicalize();
    return r;
}

ZMat ZMat::identity(std::size_t n) {
    ZMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<Int> ZMat::col(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

void ZMat::append_col(const std::vector<Int>& c) {
    if (rows_ == 0 && cols_ == 0) rows_ = c.size();
    if (c.size() != rows_) throw std::invalid_argument("ZMat::append_col: size mismatch");
    std::vector<Int> b((cols_ + 1) * rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) b[i * (cols_ + 1) + j] = a_[i * cols_ + j];
        b[i * (cols_ + 1) + cols_] = c[i];
    }
    a_ = std::move(b);
    ++cols_;
}

namespace {

void swap_cols(ZMat& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

void negate_col(ZMat& m, std::size_t c) {
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, c) = -m.at(i, c);
}

}  // namespace

Echelon column_echelon(ZMat a) {
    const std::size_t n = a.cols();
    Echelon e;
    e.u = ZMat::identity(n);
    std::size_t c = 0;
    for (std::size_t r = 0; r < a.rows() && c < n; ++r) {
        std::size_t j = c;
        while (j < n && a.at(r, j) == 0) ++j;
        if (j == n) continue;
        swap_cols(a, c, j);
        swap_cols(e.u, c, j);
        for (std::size_t j2 = c + 1; j2 < n; ++j2) {
            if (a.at(r, j2) == 0) continue;
            Int g, s, t;
            const Int p = a.at(r, c), q = a.at(r, j2);
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
            const Int pg = p / g, qg = q / g;
            for (std::size_t i = 0; i < a.rows(); ++i) {
                const Int x = a.at(i, c), y = a.at(i, j2);
                a.at(i, c) = s * x + t * y;
                a.at(i, j2) = pg * y - qg * x;
            }
            for (std::size_t i = 0; i < n; ++i) {
                const Int x = e.u.at(i, c), y = e.u.at(i, j2);
                e.u.at(i, c) = s * x + t * y;
                e.u.at(i, j2) = pg * y - qg * x;
            }
        }
        if (a.at(r, c) < 0) {
            negate_col(a, c);
            negate_col(e.u, c);
        }
        e.pivots.emplace_back(r, c);
        ++c;
    }
    e.h = std::move(a);
    return e;
}

namespace {

// Forward-substitute b against the pivot columns; returns multipliers per
// pivot column, or nullopt when some division is inexact or a residue stays.
std::optional<std::vector<Int>> pivot_multipliers(const Echelon& e, std::vector<Int> b) {
    std::vector<Int> y(e.pivots.size());
    for (std::size_t p = 0; p < e.pivots.size(); ++p) {
        const auto [r, c] = e.pivots[p];
        const Int& piv = e.h.at(r, c);
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), b[r].get_mpz_t(), piv.get_mpz_t());
        if (rem != 0) return std::nullopt;
        if (q != 0)
            for (std::size_t i = 0; i < b.size(); ++i) b[i] -= q * e.h.at(i, c);
        y[p] = q;
    }
    for (const Int& v : b)
        if (v != 0) return std::nullopt;
    return y;
}

}  // namespace

bool lattice_contains(const Echelon& e, const std::vector<Int>& b) {
    return pivot_multipliers(e, b).has_value();
}

std::optional<std::vector<Int>> lattice_solve(const Echelon& e, const std::vector<Int>& b) {
    auto y = pivot_multipliers(e, b);
    if (!y) return std::nullopt;
    std::vector<Int> x(e.h.cols());
    for (std::size_t p = 0; p < e.pivots.size(); ++p) {
        const std::size_t c = e.pivots[p].second;
        if ((*y)[p] == 0) continue;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += (*y)[p] * e.u.at(i, c);
    }
    return x;
}

std::optional<Int> order_multiplier(const Echelon& e, const std::vector<Rat>& b0) {
    std::vector<Rat> b = b0;
    Int n = 1;
    for (const auto& [r, c] : e.pivots) {
        if (b[r] == 0) continue;
        Rat y = b[r] / Rat(e.h.at(r, c));
        y.canonicalize();
        for (std::size_t i = 0; i < b.size(); ++i) {
            b[i] -= y * Rat(e.h.at(i, c));
            b[i].canonicalize();
        }
        mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), y.get_den().get_mpz_t());
    }
    for (const Rat& v : b)
        if (v != 0) return std::nullopt;
    return n;
}

ZMat kernel_lattice(const ZMat& a) {
    Echelon e = column_echelon(a);
    ZMat k(a.cols(), 0);
    std::vector<bool> is_pivot(a.cols(), false);
    for (const auto& pc : e.pivots) is_pivot[pc.second] = true;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (!is_pivot[j]) k.append_col(e.u.col(j));
    return k;
}

std::vector<Int> smith_invariants(ZMat a) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<Int> inv;
    std::size_t t = 0;
    while (t < m && t < n) {
        // locate a nonzero entry in the trailing block
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < m && !found; ++i)
            for (std::size_t j = t; j < n && !found; ++j)
                if (a.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        for (std::size_t j = 0; j < n; ++j) std::swap(a.at(t, j), a.at(pi, j));
        for (std::size_t i = 0; i < m; ++i) std::swap(a.at(i, t), a.at(i, pj));
        bool clean = false;
        while (!clean) {
            clean = true;
            // exact elimination keeps the pivot row/column fixed, so only
            // the gcd rotations (strictly shrinking the pivot) can recur
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a.at(i, t) == 0) continue;
                const Int p = a.at(t, t), q = a.at(i, t);
                if (q % p == 0) {
                    const Int c = q / p;
                    for (std::size_t j = 0; j < n; ++j) a.at(i, j) -= c * a.at(t, j);
                } else {
                    Int g, s, u;
                    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t(),
                               q.get_mpz_t());
                    const Int pg = p / g, qg = q / g;
                    for (std::size_t j = 0; j < n; ++j) {
                        const Int x = a.at(t, j), y = a.at(i, j);
                        a.at(t, j) = s * x + u * y;
                        a.at(i, j) = pg * y - qg * x;
                    }
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a.at(t, j) == 0) continue;
                const Int p = a.at(t, t), q = a.at(t, j);
                if (q % p == 0) {
                    const Int c = q / p;
                    for (std::size_t i = 0; i < m; ++i) a.at(i, j) -= c * a.at(i, t);
                } else {
                    Int g, s, u;
                    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t(),
                               q.get_mpz_t());
                    const Int pg = p / g, qg = q / g;
                    for (std::size_t i = 0; i < m; ++i) {
                        const Int x = a.at(i, t), y = a.at(i, j);
                        a.at(i, t) = s * x + u * y;
                        a.at(i, j) = pg * y - qg * x;
                    }
                    clean = false;
                }
            }
        }
        ++t;
    }
    for (std::size_t i = 0; i < t; ++i) inv.push_back(abs(a.at(i, i)));
    // enforce the divisibility chain
    for (std::size_t i = 0; i + 1 < inv.size(); ++i)
        for (std::size_t j = i + 1; j < inv.size(); ++j) {
            Int g, l;
            mpz_gcd(g.get_mpz_t(), inv[i].get_mpz_t(), inv[j].get_mpz_t());
            mpz_lcm(l.get_mpz_t(), inv[i].get_mpz_t(), inv[j].get_mpz_t());
            inv[i] = g;
            inv[j] = l;
        }
    return inv;
}

}  // namespace kron
