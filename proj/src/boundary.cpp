#include "circlelam/boundary.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace circlelam {

namespace {

/// Start angle of the type-j boundary arc of a gap, and its end angle.
CyclicArc typed_arc(Tower& tower, Color c, int level, int gap_id, int type) {
    const Gap& gap = tower.gaps(c, level).gaps.at(gap_id);
    int arc = gap.arc_of_type(type);
    if (arc < 0) throw std::logic_error("gap lacks an arc of the requested type");
    const LevelAngles& la = tower.angles_at(level);
    return {la.angles[arc], la.angles[(arc + 1) % la.count()]};
}

std::optional<Int> as_integer(const Rat& r) {
    if (boost::multiprecision::denominator(r) != 1) return std::nullopt;
    return boost::multiprecision::numerator(r);
}

} // namespace

std::vector<GapItinerary> gap_itinerary(Tower& tower, Color color, const Angle& s, int depth) {
    if (depth < 1) throw std::invalid_argument("itinerary depth must be >= 1");
    tower.build(depth); // throws past the built budget

    GapItinerary left, right;
    left.base = right.base = s;
    left.color = right.color = color;
    left.side = GapItinerary::Side::Left;
    right.side = GapItinerary::Side::Right;
    // Two chains exactly when s is a level angle (endpoint of two arcs); the
    // chains may then still coincide as gap sequences.
    bool is_angle = false;
    for (int n = 1; n <= depth; ++n) {
        const LevelAngles& la = tower.angles_at(n);
        const GapSet& gs = tower.gaps(color, n);
        int idx = la.index_of(s);
        if (idx >= 0) {
            is_angle = true;
            left.gap_ids.push_back(gs.gap_of_arc[(idx + la.count() - 1) % la.count()]);
            right.gap_ids.push_back(gs.gap_of_arc[idx]);
        } else {
            int g = gs.gap_of_arc[la.arc_containing(s)];
            left.gap_ids.push_back(g);
            right.gap_ids.push_back(g);
        }
    }

    OrbitDecomposition orb = orbit(s, tower.degree());
    int p = static_cast<int>(orb.preperiod.size());
    int q = static_cast<int>(orb.cycle.size());
    std::optional<std::pair<int, int>> cert;
    if (depth >= p + 2 * q) cert = std::make_pair(p, q);
    left.periodicity = right.periodicity = cert;

    if (!is_angle) {
        left.side = GapItinerary::Side::Unique;
        return {left};
    }
    return {left, right};
}

BigGClass big_g_class(Tower& tower, const GapItinerary& itinerary) {
    const int depth = itinerary.depth();
    const int k = tower.k();
    const int d = tower.degree();
    BigGClass out;

    auto fallback = [&] {
        std::set<Angle> pts;
        const Gap& gap = tower.gaps(itinerary.color, depth).gaps.at(itinerary.gap_ids.back());
        const LevelAngles& la = tower.angles_at(depth);
        for (int a : gap.arcs) {
            pts.insert(la.angles[a]);
            pts.insert(la.angles[(a + 1) % la.count()]);
        }
        BigGClass res;
        res.angles.assign(pts.begin(), pts.end());
        res.exact = false;
        return res;
    };

    if (!itinerary.periodicity) return fallback();
    auto [p, q] = *itinerary.periodicity;
    if (depth < p + 2 * q) return fallback();

    // The chain of t = mu^p(base) is exactly self-similar with period q; its
    // gap at level m is the p-fold mu-image of the base chain's gap at level
    // m + p.  Corner limits are fixed points of x -> (x + c)/d^q, lifted back
    // through the preperiod branch.
    Int dq = boost::multiprecision::pow(Int(d), q);
    Int dp = boost::multiprecision::pow(Int(d), p);
    auto t_gap = [&](int m) {
        int g = itinerary.gap_ids[m + p - 1];
        for (int i = 0; i < p; ++i) g = tower.mu_gap(itinerary.color, m + p - i, g);
        return g;
    };

    std::set<Angle> limits;
    int t_depth = depth - p;
    for (int m = t_depth - q + 1; m <= t_depth; ++m) {
        if (m - q < 1) continue;
        for (int j = 0; j < k; ++j) {
            Angle deep = typed_arc(tower, itinerary.color, m, t_gap(m), j).start;
            Angle shallow = typed_arc(tower, itinerary.color, m - q, t_gap(m - q), j).start;
            auto c = as_integer(Rat(deep.value() * dq) - shallow.value());
            if (!c || *c < 0 || *c > dq - 1) return fallback();
            // Fixed point of x -> (x + c)/d^q kept as a representative in
            // [0,1]: corner sequences may converge to 1 (= 0 on the circle),
            // and the preperiod branch must see that representative.
            Rat rep = Rat(*c) / Rat(dq - 1);
            if (p > 0) {
                Angle deep_s = typed_arc(tower, itinerary.color, m + p, itinerary.gap_ids[m + p - 1], j).start;
                auto e = as_integer(Rat(deep_s.value() * dp) - deep.value());
                if (!e || *e < 0 || *e > dp - 1) return fallback();
                rep = (rep + Rat(*e)) / Rat(dp);
            }
            limits.insert(Angle(rep));
        }
    }
    if (static_cast<int>(limits.size()) > k) return fallback();

    // Every limit must sit on the deepest gap's boundary arcs.
    const Gap& deepest = tower.gaps(itinerary.color, depth).gaps.at(itinerary.gap_ids.back());
    const LevelAngles& la = tower.angles_at(depth);
    for (const auto& x : limits) {
        bool inside = false;
        for (int a : deepest.arcs) {
            CyclicArc arc{la.angles[a], la.angles[(a + 1) % la.count()]};
            if (arc.contains(x)) { inside = true; break; }
        }
        if (!inside) return fallback();
    }

    out.angles.assign(limits.begin(), limits.end());
    out.exact = true;
    return out;
}

BoundaryClass approx_class(Tower& tower, Color color, const Angle& s, int depth) {
    BoundaryClass out;
    out.exact = true;
    Int cap = boost::multiprecision::pow(Int(2), tower.degree() - 1);

    std::set<Angle> found{s};
    std::map<Angle, int> set_depth{{s, 0}};
    std::deque<Angle> queue{s};
    std::set<std::pair<Angle, int>> seen_chains; // (base, side) expansions done
    while (!queue.empty()) {
        Angle t = queue.front();
        queue.pop_front();
        int dt = set_depth[t];
        if (Int(dt) >= cap) { out.cap_hit = true; continue; }
        for (const auto& itin : gap_itinerary(tower, color, t, depth)) {
            if (!seen_chains.emplace(t, static_cast<int>(itin.side)).second) continue;
            BigGClass cls = big_g_class(tower, itin);
            out.chain_sets += 1;
            out.exact = out.exact && cls.exact;
            if (!cls.exact) continue; // over-approximations never feed the chain closure
            for (const auto& x : cls.angles) {
                if (found.insert(x).second) {
                    set_depth[x] = dt + 1;
                    queue.push_back(x);
                }
            }
        }
    }
    out.angles.assign(found.begin(), found.end());
    return out;
}

BoundaryClass fatou_class(Tower& tower, Color color, const Angle& s, int depth) {
    BoundaryClass base = approx_class(tower, color, s, depth);
    const LevelAngles& la = tower.angles_at(depth);
    const LevelRelation& rel = tower.relation(color, depth);

    int fatou_cls = -1;
    for (const auto& t : base.angles) {
        int idx = la.index_of(t);
        if (idx >= 0 && rel.dyn_type[rel.class_of[idx]] != DynType::Julia) {
            fatou_cls = rel.class_of[idx];
            break;
        }
    }
    if (fatou_cls < 0) return base;

    // Union of the traces of all gaps meeting the Fatou class at the deepest
    // level; this grows with depth and is reported inexact.
    const GapSet& gs = tower.gaps(color, depth);
    std::set<int> gap_ids;
    for (int idx : rel.classes[fatou_cls]) {
        gap_ids.insert(gs.gap_of_arc[idx]);
        gap_ids.insert(gs.gap_of_arc[(idx + la.count() - 1) % la.count()]);
    }
    std::set<Angle> pts(base.angles.begin(), base.angles.end());
    for (int g : gap_ids)
        for (int a : gs.gaps[g].arcs) {
            pts.insert(la.angles[a]);
            pts.insert(la.angles[(a + 1) % la.count()]);
        }
    BoundaryClass out;
    out.angles.assign(pts.begin(), pts.end());
    out.exact = false;
    out.chain_sets = base.chain_sets + static_cast<int>(gap_ids.size());
    out.cap_hit = base.cap_hit;
    return out;
}

} // namespace circlelam
