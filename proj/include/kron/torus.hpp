#pragma once

#include <map>
#include <optional>
#include <string>

#include "kron/zmat.hpp"

namespace kron {

/// Hands out the formal irrationals sqrt(2), sqrt(3), sqrt(5), ... in
/// allocation order. Markers are identified by the prime itself, so two
/// allocators never denote different reals by the same marker.
class PrimeAllocator {
public:
    unsigned long next();
    unsigned long allocated() const { return count_; }

private:
    unsigned long count_ = 0;
};

/// Exact element of T = R/Z: a rational in [0,1) plus a rational combination
/// of sqrt(p) for distinct primes p. Equality is a finite symbolic check;
/// order comparisons against rationals are decided by interval refinement.
class TorusElement {
public:
    TorusElement() = default;
    explicit TorusElement(Rat r);
    static TorusElement irrational(unsigned long prime, Rat coeff);

    const Rat& rational_part() const { return rational_part_; }
    const std::map<unsigned long, Rat>& coeffs() const { return coeffs_; }
    bool is_rational() const { return coeffs_.empty(); }

    /// Order as a group element: the denominator when rational, else nullopt.
    std::optional<Int> finite_order() const;

    TorusElement add(const TorusElement& o) const;
    TorusElement sub(const TorusElement& o) const;
    TorusElement scale(const Int& n) const;

    bool operator==(const TorusElement& o) const {
        return rational_part_ == o.rational_part_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const TorusElement& o) const { return !(*this == o); }
    bool operator<(const TorusElement& o) const;  // canonical order, for dedup only

    /// Sign of (canonical representative in [0,1)) - q. Exact.
    int compare_representative(const Rat& q) const;

    /// Certified double enclosure of the canonical representative.
    void approx(double& value, double& error) const;

    /// Exact textual form, e.g. "1/3+(1/2)*sqrt(2)+(-2/7)*sqrt(5)".
    std::string to_string() const;
    static TorusElement parse(const std::string& s);

private:
    Rat rational_part_;                     // in [0,1)
    std::map<unsigned long, Rat> coeffs_;   // prime -> nonzero rational
    void normalize();
};

/// Open arc with rational endpoints; length 1 denotes the full circle.
class Arc {
public:
    Arc(Rat start, Rat length);

    const Rat& start() const { return start_; }
    const Rat& length() const { return length_; }
    bool is_full() const { return length_ == 1; }

    bool contains(const TorusElement& y) const;

    bool operator==(const Arc& o) const { return start_ == o.start_ && length_ == o.length_; }

private:
    Rat start_;   // in [0,1)
    Rat length_;  // in (0,1]
};

/// The arc solver: y in V with m y = z and n y != z'. Enumerates the m lifts
/// (lift(z)+j)/m and returns the admissible one with least j. Requires
/// m >= 2, 1 <= n < m and 2/m < l(V); note m = 2 is rejected for every arc
/// since no length in (0,1] exceeds 1.
TorusElement solve_arc(const Arc& v, const TorusElement& z, const TorusElement& z_prime,
                       const Int& m, const Int& n);

/// The j-th of the m lifts of z under multiplication by m, along the
/// canonical branch of z's representative.
TorusElement lift_of(const TorusElement& z, const Int& m, const Int& j);

}  // namespace kron
