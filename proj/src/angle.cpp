#include "circlelam/angle.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

namespace circlelam {

std::string Angle::str() const {
    std::ostringstream os;
    os << num() << "/" << den();
    return os.str();
}

Angle Angle::parse(const std::string& text) {
    auto bad = [&] { return std::invalid_argument("bad angle '" + text + "', expected p/q"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    auto is_int = [&](const std::string& s) {
        if (s.empty()) return false;
        size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!is_int(text)) throw bad();
        return Angle(Int(text), 1);
    }
    std::string p = text.substr(0, slash), q = text.substr(slash + 1);
    if (!is_int(p) || !is_int(q)) throw bad();
    Int qi(q);
    if (qi <= 0) throw std::invalid_argument("bad angle '" + text + "': denominator must be positive");
    return Angle(Int(p), qi);
}

std::ostream& operator<<(std::ostream& os, const Angle& a) { return os << a.str(); }

Rat CyclicArc::length() const { return ccw_distance(start, end); }

bool CyclicArc::contains(const Angle& a) const {
    if (a == start || a == end) return true;
    if (start == end) return false;
    return cyclic_between(start, a, end);
}

Angle reduce(const Int& p, const Int& q) {
    if (q == 0) throw std::invalid_argument("reduce: denominator is zero");
    if (q < 0) return Angle(-p, -q);
    return Angle(p, q);
}

Angle mu(const Angle& a, int degree) { return Angle(a.value() * degree); }

Angle mu_pow(const Angle& a, int degree, int n) {
    Int dn = boost::multiprecision::pow(Int(degree), n);
    return Angle(a.value() * Rat(dn));
}

std::vector<Angle> preimages(const Angle& a, int degree) {
    std::vector<Angle> out;
    out.reserve(degree);
    Int p = a.num(), q = a.den();
    for (int j = 0; j < degree; ++j) out.emplace_back(p + j * q, q * degree);
    std::sort(out.begin(), out.end());
    return out;
}

bool cyclic_between(const Angle& a, const Angle& b, const Angle& c) {
    if (a == b || b == c || a == c)
        throw std::invalid_argument("cyclic_between: arguments must be pairwise distinct");
    return ccw_distance(a, b) < ccw_distance(a, c);
}

bool sets_cross(const std::vector<Angle>& a_set, const std::vector<Angle>& b_set) {
    if (a_set.empty() || b_set.empty())
        throw std::invalid_argument("sets_cross: sets must be nonempty");
    if (a_set.size() < 2 || b_set.size() < 2) return false;

    // Merge both sets in circle order; crossing means the cyclic label word
    // switches A->B->A->B (two alternations of each).
    std::map<Angle, int> labeled;
    for (const auto& a : a_set) labeled.emplace(a, 0);
    for (const auto& b : b_set) {
        auto [it, inserted] = labeled.emplace(b, 1);
        if (!inserted) throw std::invalid_argument("sets_cross: sets must be disjoint");
    }
    std::vector<int> word;
    word.reserve(labeled.size());
    for (const auto& [angle, label] : labeled) word.push_back(label);
    int switches = 0;
    size_t n = word.size();
    for (size_t i = 0; i < n; ++i) switches += word[i] != word[(i + 1) % n];
    return switches >= 4;
}

OrbitDecomposition orbit(const Angle& a, int degree) {
    std::vector<Angle> seq{a};
    std::map<Angle, size_t> seen{{a, 0}};
    for (;;) {
        Angle next = mu(seq.back(), degree);
        auto it = seen.find(next);
        if (it != seen.end()) {
            OrbitDecomposition out;
            out.preperiod.assign(seq.begin(), seq.begin() + it->second);
            out.cycle.assign(seq.begin() + it->second, seq.end());
            return out;
        }
        seen.emplace(next, seq.size());
        seq.push_back(next);
    }
}

Rat ccw_distance(const Angle& a, const Angle& b) {
    Rat diff = b.value() - a.value();
    if (diff < 0) diff += 1;
    return diff;
}

Angle ccw_advance(const Angle& a, const Rat& offset) { return Angle(a.value() + offset); }

} // namespace circlelam
