#include "kron/torus.hpp"

#include <cmath>
#include <sstream>

#include "kron/errors.hpp"

namespace kron {

namespace {

constexpr unsigned long kPrecisionCap = 1ul << 15;

Int rat_floor(const Rat& q) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return fl;
}

// floor(sqrt(p) * 2^bits), cached per (prime, bits)
const Int& sqrt_scaled(unsigned long prime, unsigned long bits) {
    static std::map<std::pair<unsigned long, unsigned long>, Int> cache;
    auto key = std::make_pair(prime, bits);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Int v = Int(prime) << (2 * bits);
    Int s;
    mpz_sqrt(s.get_mpz_t(), v.get_mpz_t());
    return cache.emplace(key, std::move(s)).first->second;
}

// rational enclosure of q0 + sum c_p sqrt(p) at the given precision
void enclose(const Rat& q0, const std::map<unsigned long, Rat>& coeffs, unsigned long bits,
             Rat& lo, Rat& hi) {
    lo = q0;
    hi = q0;
    const Rat scale = Rat(1, Int(1) << bits);
    for (const auto& [p, c] : coeffs) {
        const Int& s = sqrt_scaled(p, bits);
        Rat slo = Rat(s) * scale, shi = Rat(s + 1) * scale;
        if (c >= 0) {
            lo += c * slo;
            hi += c * shi;
        } else {
            lo += c * shi;
            hi += c * slo;
        }
        lo.canonicalize();
        hi.canonicalize();
    }
}

int sign_of(const Rat& q0, const std::map<unsigned long, Rat>& coeffs) {
    if (coeffs.empty()) return sgn(q0);
    for (unsigned long bits = 32; bits <= kPrecisionCap; bits *= 2) {
        Rat lo, hi;
        enclose(q0, coeffs, bits, lo, hi);
        if (lo > 0) return 1;
        if (hi < 0) return -1;
    }
    throw PrecisionError("sign refinement hit the precision cap");
}

Int floor_of(const Rat& q0, const std::map<unsigned long, Rat>& coeffs) {
    if (coeffs.empty()) return rat_floor(q0);
    for (unsigned long bits = 32; bits <= kPrecisionCap; bits *= 2) {
        Rat lo, hi;
        enclose(q0, coeffs, bits, lo, hi);
        Int fl = rat_floor(lo), fh = rat_floor(hi);
        if (fl == fh) return fl;
    }
    throw PrecisionError("floor refinement hit the precision cap");
}

}  // namespace

unsigned long PrimeAllocator::next() {
    static const unsigned long primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                           41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
    if (count_ < sizeof(primes) / sizeof(primes[0])) return primes[count_++];
    // beyond the table: next prime via gmp
    Int p(primes[sizeof(primes) / sizeof(primes[0]) - 1]);
    for (unsigned long i = sizeof(primes) / sizeof(primes[0]); i <= count_; ++i)
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    ++count_;
    return p.get_ui();
}

TorusElement::TorusElement(Rat r) : rational_part_(std::move(r)) { normalize(); }

TorusElement TorusElement::irrational(unsigned long prime, Rat coeff) {
    TorusElement t;
    t.coeffs_[prime] = std::move(coeff);
    t.normalize();
    return t;
}

void TorusElement::normalize() {
    rational_part_.canonicalize();
    rational_part_ = rat_mod1(rational_part_);
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        it->second.canonicalize();
        if (it->second == 0)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

std::optional<Int> TorusElement::finite_order() const {
    if (!coeffs_.empty()) return std::nullopt;
    return Int(rational_part_.get_den());
}

TorusElement TorusElement::add(const TorusElement& o) const {
    TorusElement r;
    r.rational_part_ = rational_part_ + o.rational_part_;
    r.coeffs_ = coeffs_;
    for (const auto& [p, c] : o.coeffs_) r.coeffs_[p] += c;
    r.normalize();
    return r;
}

TorusElement TorusElement::sub(const TorusElement& o) const { return add(o.scale(-1)); }

TorusElement TorusElement::scale(const Int& n) const {
    TorusElement r;
    r.rational_part_ = rational_part_ * Rat(n);
    for (const auto& [p, c] : coeffs_) r.coeffs_[p] = c * Rat(n);
    r.normalize();
    return r;
}

bool TorusElement::operator<(const TorusElement& o) const {
    if (rational_part_ != o.rational_part_) return rational_part_ < o.rational_part_;
    return std::lexicographical_compare(
        coeffs_.begin(), coeffs_.end(), o.coeffs_.begin(), o.coeffs_.end(),
        [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first < b.first : a.second < b.second;
        });
}

int TorusElement::compare_representative(const Rat& q) const {
    const Int f = floor_of(rational_part_, coeffs_);
    Rat d = rational_part_ - Rat(f) - q;
    d.canonicalize();
    return sign_of(d, coeffs_);
}

void TorusElement::approx(double& value, double& error) const {
    const Int f = floor_of(rational_part_, coeffs_);
    Rat lo, hi;
    enclose(rational_part_ - Rat(f), coeffs_, 128, lo, hi);
    value = (lo.get_d() + hi.get_d()) / 2;
    error = Rat(hi - lo).get_d() / 2 + 1e-14;
}

std::string TorusElement::to_string() const {
    std::ostringstream os;
    os << rational_part_.get_num() << "/" << rational_part_.get_den();
    for (const auto& [p, c] : coeffs_)
        os << "+(" << c.get_num() << "/" << c.get_den() << ")*sqrt(" << p << ")";
    return os.str();
}

TorusElement TorusElement::parse(const std::string& s) {
    TorusElement t;
    std::size_t pos = s.find("+(");
    const std::string head = s.substr(0, pos);
    const std::size_t slash = head.find('/');
    if (slash == std::string::npos) throw ParseError("torus element: rational part must be p/q: " + s);
    try {
        t.rational_part_ = Rat(Int(head.substr(0, slash)), Int(head.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw ParseError("torus element: bad rational: " + s);
    }
    while (pos != std::string::npos) {
        const std::size_t close = s.find(")*sqrt(", pos);
        if (close == std::string::npos) throw ParseError("torus element: bad term: " + s);
        const std::string coeff = s.substr(pos + 2, close - pos - 2);
        const std::size_t end = s.find(')', close + 7);
        if (end == std::string::npos) throw ParseError("torus element: bad term: " + s);
        const std::string prime = s.substr(close + 7, end - close - 7);
        const std::size_t cs = coeff.find('/');
        if (cs == std::string::npos) throw ParseError("torus element: coefficient must be a/b: " + s);
        try {
            Rat c(Int(coeff.substr(0, cs)), Int(coeff.substr(cs + 1)));
            c.canonicalize();
            t.coeffs_[std::stoul(prime)] = c;
        } catch (const std::invalid_argument&) {
            throw ParseError("torus element: bad term: " + s);
        }
        pos = s.find("+(", end);
    }
    t.normalize();
    return t;
}

Arc::Arc(Rat start, Rat length) : start_(rat_mod1(start)), length_(std::move(length)) {
    length_.canonicalize();
    if (length_ <= 0 || length_ > 1) throw PreconditionError("arc length must be in (0,1]");
}

bool Arc::contains(const TorusElement& y) const {
    if (is_full()) return true;
    const Rat end = start_ + length_;
    if (end <= 1) return y.compare_representative(start_) > 0 && y.compare_representative(end) < 0;
    return y.compare_representative(start_) > 0 || y.compare_representative(end - 1) < 0;
}

TorusElement lift_of(const TorusElement& z, const Int& m, const Int& j) {
    const Int f = floor_of(z.rational_part(), z.coeffs());
    TorusElement y;
    Rat base = (z.rational_part() - Rat(f) + Rat(j)) / Rat(m);
    base.canonicalize();
    y = TorusElement(base);
    for (const auto& [p, c] : z.coeffs()) {
        Rat cc = c / Rat(m);
        cc.canonicalize();
        y = y.add(TorusElement::irrational(p, cc));
    }
    return y;
}

TorusElement solve_arc(const Arc& v, const TorusElement& z, const TorusElement& z_prime,
                       const Int& m, const Int& n) {
    if (m < 2) throw PreconditionError("solve_arc: m must be >= 2");
    if (n < 1 || n >= m) throw PreconditionError("solve_arc: need 1 <= n < m");
    if (Rat(2) / Rat(m) >= v.length())
        throw PreconditionError("solve_arc: need 2/m < l(V)");
    std::vector<Int> in_v;
    for (Int j = 0; j < m; ++j)
        if (v.contains(lift_of(z, m, j))) in_v.push_back(j);
    if (in_v.size() < 2)
        throw Error("solve_arc: fewer than two lifts inside the arc");
    for (const Int& j : in_v) {
        TorusElement y = lift_of(z, m, j);
        if (y.scale(n) != z_prime) return y;
    }
    throw Error("solve_arc: every in-arc lift collides with z'");
}

}  // namespace kron
