#ifndef CIRCLELAM_ANGLE_HPP
#define CIRCLELAM_ANGLE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace circlelam {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// A point of Q/Z, stored as a reduced rational in [0,1).
/// 0 is represented as 0/1.  Immutable value type.
class Angle {
public:
    Angle() : value_(0) {}
    explicit Angle(const Rat& v) : value_(wrap(v)) {}
    Angle(const Int& p, const Int& q) : value_(wrap(make(p, q))) {}

    const Rat& value() const { return value_; }
    Int num() const { return boost::multiprecision::numerator(value_); }
    Int den() const { return boost::multiprecision::denominator(value_); }

    auto operator<=>(const Angle& o) const {
        if (value_ < o.value_) return std::strong_ordering::less;
        if (value_ > o.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    bool operator==(const Angle&) const = default;

    /// Exact serialization, always "p/q" (reduced), e.g. "0/1", "5/8".
    std::string str() const;

    /// Accepts "p/q" with q > 0, or a bare integer (taken mod 1).
    static Angle parse(const std::string& text);

private:
    static Rat make(const Int& p, const Int& q) {
        if (q <= 0) throw std::invalid_argument("angle denominator must be positive");
        return Rat(p, q);
    }
    static Rat wrap(Rat v) {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        Int n = numerator(v), d = denominator(v);
        Int m = n % d;
        if (m < 0) m += d;
        return Rat(m, d);
    }
    Rat value_;
};

std::ostream& operator<<(std::ostream& os, const Angle& a);

/// Closed arc traversed counterclockwise from start to end.
/// Full-circle arcs are not representable; start == end denotes a point.
struct CyclicArc {
    Angle start;
    Angle end;

    bool operator==(const CyclicArc&) const = default;

    /// Exact length of the ccw traversal from start to end, in [0,1).
    Rat length() const;
    /// Closed-arc membership (endpoints inclusive).
    bool contains(const Angle& a) const;
};

/// Eventually periodic forward orbit of a rational angle under mu_d.
struct OrbitDecomposition {
    std::vector<Angle> preperiod;
    std::vector<Angle> cycle;
};

/// Canonical representative of p/q mod 1.  Rejects q = 0.
Angle reduce(const Int& p, const Int& q);

/// The d-fold covering map t -> d*t (mod 1).
Angle mu(const Angle& a, int degree);

/// Iterated map t -> d^n * t (mod 1).
Angle mu_pow(const Angle& a, int degree, int n);

/// The d solutions of mu(x) = a, sorted by position in [0,1).
std::vector<Angle> preimages(const Angle& a, int degree);

/// True iff b lies strictly inside the ccw arc from a to c.
/// Arguments must be pairwise distinct.
bool cyclic_between(const Angle& a, const Angle& b, const Angle& c);

/// True iff some a,c in A and b,d in B interleave in cyclic order.
/// A and B must be disjoint, each nonempty.
bool sets_cross(const std::vector<Angle>& a_set, const std::vector<Angle>& b_set);

/// Preperiod/cycle decomposition of {a, mu(a), mu^2(a), ...}.
OrbitDecomposition orbit(const Angle& a, int degree);

/// ccw distance from a to b, in [0,1).
Rat ccw_distance(const Angle& a, const Angle& b);

/// Angle at ccw distance `offset` from a.
Angle ccw_advance(const Angle& a, const Rat& offset);

} // namespace circlelam

#endif
