#include "circlelam/lamination.hpp"

#include "circlelam/dsu.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace circlelam {

const char* dyn_type_name(DynType t) {
    switch (t) {
        case DynType::Julia: return "Julia";
        case DynType::PeriodicFatou: return "PeriodicFatou";
        case DynType::PreperiodicFatou: return "PreperiodicFatou";
    }
    return "?";
}

int LevelAngles::index_of(const Angle& a) const {
    if (common_den % a.den() != 0) return -1;
    Int target = a.num() * (common_den / a.den());
    auto it = std::lower_bound(nums.begin(), nums.end(), target);
    if (it == nums.end() || *it != target) return -1;
    return static_cast<int>(it - nums.begin());
}

int LevelAngles::arc_containing(const Angle& a) const {
    if (common_den % a.den() == 0) {
        Int target = a.num() * (common_den / a.den());
        auto it = std::upper_bound(nums.begin(), nums.end(), target);
        if (it == nums.begin()) return count() - 1; // below the smallest angle: wrap arc
        return static_cast<int>(it - nums.begin()) - 1;
    }
    auto it = std::upper_bound(angles.begin(), angles.end(), a);
    if (it == angles.begin()) return count() - 1;
    return static_cast<int>(it - angles.begin()) - 1;
}

int LevelRelation::class_succ(int idx) const {
    const auto& members = classes[class_of[idx]];
    int p = pos_in_class[idx];
    return members[(p + 1) % members.size()];
}

int LevelRelation::class_pred(int idx) const {
    const auto& members = classes[class_of[idx]];
    int p = pos_in_class[idx];
    return members[(p + members.size() - 1) % members.size()];
}

int Gap::arc_of_type(int t) const {
    for (std::size_t i = 0; i < types.size(); ++i)
        if (types[i] == t) return arcs[i];
    return -1;
}

namespace {

Int common_denominator(const std::vector<Angle>& angles) {
    Int q = 1;
    for (const auto& a : angles) q = boost::multiprecision::lcm(q, a.den());
    return q;
}

void fill_nums(LevelAngles& la) {
    la.nums.clear();
    la.nums.reserve(la.angles.size());
    for (const auto& a : la.angles) la.nums.push_back(a.num() * (la.common_den / a.den()));
}

} // namespace

LevelAngles angles_at_level(const ZeroData& zero, int degree, int n) {
    LevelAngles out;
    out.level = 0;
    out.angles = zero.zero_angles;
    out.common_den = common_denominator(out.angles);
    fill_nums(out);
    for (int m = 0; m < n; ++m) {
        LevelAngles next;
        next.level = m + 1;
        next.common_den = out.common_den * degree;
        next.angles.reserve(out.angles.size() * degree);
        next.nums.reserve(out.angles.size() * degree);
        for (int j = 0; j < degree; ++j) {
            for (std::size_t r = 0; r < out.angles.size(); ++r) {
                next.nums.push_back(out.nums[r] + j * out.common_den);
                next.angles.emplace_back(Rat(next.nums.back(), next.common_den));
            }
        }
        out = std::move(next);
    }
    return out;
}

Tower::Tower(PortraitPair pair, std::size_t max_angles)
    : pair_(std::move(pair)), max_angles_(max_angles) {
    if (pair_.zero.k < 2)
        throw std::invalid_argument("tower requires at least two zero-level angles (k >= 2)");

    for (Color c : {Color::White, Color::Black}) {
        const auto& portrait = c == Color::White ? pair_.white : pair_.black;
        template_classes_[static_cast<int>(c)] = portrait.classes;
    }

    // Level 0: the trivial partition of A^0 and the single k-arc gap.
    auto data = std::make_unique<LevelData>();
    data->angles.level = 0;
    data->angles.angles = pair_.zero.zero_angles;
    data->angles.common_den = common_denominator(data->angles.angles);
    fill_nums(data->angles);
    int k = pair_.zero.k;
    data->arc_type.resize(k);
    for (int i = 0; i < k; ++i) data->arc_type[i] = i;
    for (Color c : {Color::White, Color::Black}) {
        auto& rel = data->rel[static_cast<int>(c)];
        rel.level = 0;
        rel.color = c;
        rel.class_of.resize(k);
        rel.pos_in_class.assign(k, 0);
        for (int i = 0; i < k; ++i) {
            rel.class_of[i] = i;
            rel.classes.push_back({i});
            rel.image_class.push_back(-1);
            rel.local_degree.push_back(1);
            rel.dyn_type.push_back(DynType::Julia);
        }
    }
    levels_.push_back(std::move(data));
    for (Color c : {Color::White, Color::Black})
        levels_[0]->gaps[static_cast<int>(c)] = sweep_gaps(c, 0);
}

Int Tower::level_size(int n) const {
    return Int(pair_.zero.k) * boost::multiprecision::pow(Int(degree()), n);
}

void Tower::build(int n) {
    if (n < 0) throw std::invalid_argument("level must be >= 0");
    while (built_depth() < n) build_next();
}

const LevelAngles& Tower::angles_at(int n) {
    build(n);
    return level(n).angles;
}

const LevelRelation& Tower::relation(Color c, int n) {
    build(n);
    return level(n).rel[static_cast<int>(c)];
}

const GapSet& Tower::gaps(Color c, int n) {
    build(n);
    return level(n).gaps[static_cast<int>(c)];
}

const std::vector<int>& Tower::arc_types(int n) {
    build(n);
    return level(n).arc_type;
}

int Tower::mu_gap(Color c, int n, int gap_id) {
    if (n < 1) throw std::invalid_argument("mu_gap needs level >= 1");
    build(n);
    const GapSet& gs = level(n).gaps[static_cast<int>(c)];
    int arc = gs.gaps.at(gap_id).arcs[0];
    int below = level(n - 1).angles.count();
    return level(n - 1).gaps[static_cast<int>(c)].gap_of_arc[arc % below];
}

void Tower::build_next() {
    int n_next = built_depth() + 1;
    Int need = level_size(n_next);
    if (need > Int(max_angles_)) {
        std::ostringstream os;
        os << "angle budget exceeded: level " << n_next << " needs " << need
           << " angles per color, budget is " << max_angles_;
        throw BudgetExceeded(os.str());
    }

    const LevelData& cur = level(n_next - 1);
    auto data = std::make_unique<LevelData>();
    data->angles.level = n_next;
    int d = degree();
    int n_cur = cur.angles.count();
    data->angles.common_den = cur.angles.common_den * d;
    data->angles.angles.reserve(static_cast<std::size_t>(n_cur) * d);
    data->angles.nums.reserve(static_cast<std::size_t>(n_cur) * d);
    for (int j = 0; j < d; ++j) {
        for (int r = 0; r < n_cur; ++r) {
            data->angles.nums.push_back(cur.angles.nums[r] + j * cur.angles.common_den);
            data->angles.angles.emplace_back(Rat(data->angles.nums.back(), data->angles.common_den));
        }
    }
    // mu maps index i to i % n_cur, so arc types pull back by the same rule.
    data->arc_type.resize(data->angles.angles.size());
    for (std::size_t i = 0; i < data->arc_type.size(); ++i)
        data->arc_type[i] = cur.arc_type[i % n_cur];
    levels_.push_back(std::move(data));

    for (Color c : {Color::White, Color::Black}) build_relation(c, n_next);
    for (Color c : {Color::White, Color::Black})
        level(n_next).gaps[static_cast<int>(c)] = sweep_gaps(c, n_next);
}

namespace {

/// Location of a level-1 angle relative to the 0-arc subdivision.
struct PullbackPoint {
    bool is_zero = false;
    int zero_index = -1; // 0-arc starting at this angle, when is_zero
    int arc_type = -1;   // 0-arc whose interior holds the angle, otherwise
    Int offset_num;      // (angle - arc start) * Q0 * d, an exact integer
};

int index_of_num(const LevelAngles& la, const Int& num) {
    auto it = std::lower_bound(la.nums.begin(), la.nums.end(), num);
    if (it == la.nums.end() || *it != num) return -1;
    return static_cast<int>(it - la.nums.begin());
}

} // namespace

void Tower::build_relation(Color c, int n_next) {
    int n = n_next - 1;
    const LevelData& cur = level(n);
    LevelData& nxt = level(n_next);
    const ZeroData& zero = pair_.zero;
    int d = degree();
    int n_new = nxt.angles.count();
    DisjointSet dsu(n_new);
    const Int& q0 = levels_[0]->angles.common_den;

    // Locations of all pullback template angles (the level-1 data of color c),
    // plus the zero-level corner angles not covered by any template class.
    // Offsets are scaled so that, inside a gap whose type-t arc starts at
    // numerator S over Q_n, the pullback point has numerator S*d + offset_num
    // over Q_{n+1}.
    const auto& templates = template_classes_[static_cast<int>(c)];
    std::vector<std::vector<PullbackPoint>> class_points;
    std::set<Angle> covered;
    auto locate = [&](const Angle& b) {
        PullbackPoint p;
        int zi = zero.angle_index(b);
        if (zi >= 0) {
            p.is_zero = true;
            p.zero_index = zi;
        } else {
            p.arc_type = zero.arc_containing(b);
            Rat scaled = ccw_distance(zero.zero_angles[p.arc_type], b) * q0 * d;
            if (boost::multiprecision::denominator(scaled) != 1)
                throw std::logic_error("pullback offset is not integral");
            p.offset_num = boost::multiprecision::numerator(scaled);
        }
        return p;
    };
    for (const auto& cls : templates) {
        std::vector<PullbackPoint> pts;
        for (const auto& b : cls) {
            pts.push_back(locate(b));
            covered.insert(b);
        }
        class_points.push_back(std::move(pts));
    }
    for (const auto& z : zero.zero_angles)
        if (!covered.count(z)) class_points.push_back({locate(z)});

    const GapSet& gapset = cur.gaps[static_cast<int>(c)];
    int k = zero.k;
    int n_cur = cur.angles.count();
    std::vector<int> type_to_arc(k, -1);
    std::vector<int> targets;
    Int num;
    for (const auto& gap : gapset.gaps) {
        for (std::size_t i = 0; i < gap.arcs.size(); ++i) type_to_arc[gap.types[i]] = gap.arcs[i];
        for (const auto& pts : class_points) {
            targets.clear();
            for (const auto& p : pts) {
                if (p.is_zero) {
                    // Two boundary preimages: the start of the type-j arc and
                    // the end of the type-(j-1) arc of this gap.
                    int a_start = type_to_arc[p.zero_index];
                    int a_prev = type_to_arc[(p.zero_index + k - 1) % k];
                    num = cur.angles.nums[a_start] * d;
                    int i1 = index_of_num(nxt.angles, num);
                    num = cur.angles.nums[(a_prev + 1) % n_cur] * d;
                    int i2 = index_of_num(nxt.angles, num);
                    if (i1 < 0 || i2 < 0) throw std::logic_error("pullback corner missing at next level");
                    targets.push_back(i1);
                    if (i2 != i1) targets.push_back(i2);
                } else {
                    num = cur.angles.nums[type_to_arc[p.arc_type]] * d + p.offset_num;
                    int i = index_of_num(nxt.angles, num);
                    if (i < 0) throw std::logic_error("pullback point missing at next level");
                    targets.push_back(i);
                }
            }
            for (std::size_t i = 1; i < targets.size(); ++i) dsu.unite(targets[0], targets[i]);
        }
    }

    finish_relation(c, n_next, dsu);
}

void Tower::finish_relation(Color c, int n_next, DisjointSet& dsu) {
    LevelData& nxt = level(n_next);
    const LevelData& cur = level(n_next - 1);
    auto& rel = nxt.rel[static_cast<int>(c)];
    rel.level = n_next;
    rel.color = c;
    int n_new = nxt.angles.count();
    rel.class_of.assign(n_new, -1);
    rel.pos_in_class.assign(n_new, 0);

    // Root order equals smallest-member order, so ids are stable.
    std::vector<int> root_to_class(n_new, -1);
    for (int i = 0; i < n_new; ++i) {
        int root = static_cast<int>(dsu.find(i));
        if (root_to_class[root] < 0) {
            root_to_class[root] = rel.class_count();
            rel.classes.emplace_back();
        }
        int cls = root_to_class[root];
        rel.class_of[i] = cls;
        rel.pos_in_class[i] = static_cast<int>(rel.classes[cls].size());
        rel.classes[cls].push_back(i);
    }

    const LevelRelation& prev = cur.rel[static_cast<int>(c)];
    int n_cur = cur.angles.count();
    rel.image_class.resize(rel.class_count());
    rel.local_degree.resize(rel.class_count());
    rel.dyn_type.assign(rel.class_count(), DynType::Julia);
    for (int cls = 0; cls < rel.class_count(); ++cls)
        rel.image_class[cls] = prev.class_of[rel.classes[cls][0] % n_cur];

    if (n_next == 1) {
        // level-1 classes are their own critical classes
        for (int cls = 0; cls < rel.class_count(); ++cls)
            rel.local_degree[cls] = rel.class_size(cls) >= 2 ? rel.class_size(cls) : 1;
    } else {
        // d([alpha]) is the size of the critical (nontrivial level-1) class
        // the class contains, if any
        const LevelAngles& level1 = angles_at(1);
        const LevelRelation& rel1 = level(1).rel[static_cast<int>(c)];
        for (int cls = 0; cls < rel.class_count(); ++cls) {
            std::map<int, int> hits; // level-1 class -> members present
            for (int idx : rel.classes[cls]) {
                int i1 = level1.index_of(nxt.angles.angles[idx]);
                if (i1 >= 0) hits[rel1.class_of[i1]] += 1;
            }
            int degree = 1;
            for (const auto& [cls1, count] : hits)
                if (rel1.class_size(cls1) >= 2 && count == rel1.class_size(cls1))
                    degree = std::max(degree, rel1.class_size(cls1));
            rel.local_degree[cls] = degree;
        }
    }

    if (n_next == 1) {
        classify_level1(c);
    } else {
        for (int cls = 0; cls < rel.class_count(); ++cls)
            rel.dyn_type[cls] = prev.dyn_type[rel.image_class[cls]];
    }
}

void Tower::classify_level1(Color c) {
    auto& rel = level(1).rel[static_cast<int>(c)];
    const LevelAngles& a1 = level(1).angles;
    int d = degree();

    std::vector<int> critical;
    for (int cls = 0; cls < rel.class_count(); ++cls)
        if (rel.class_size(cls) >= 2) critical.push_back(cls);

    auto orbit_hits = [&](int cls, const std::vector<int>& targets) {
        // Follow the forward orbit of the class image through A^0.
        Angle t = mu(a1.angles[rel.classes[cls][0]], d);
        std::set<Angle> seen;
        while (seen.insert(t).second) {
            int idx = a1.index_of(t);
            if (idx >= 0) {
                int tc = rel.class_of[idx];
                if (std::find(targets.begin(), targets.end(), tc) != targets.end()) return true;
            }
            t = mu(t, d);
        }
        return false;
    };

    std::vector<int> periodic;
    for (int cls : critical)
        if (orbit_hits(cls, {cls})) {
            rel.dyn_type[cls] = DynType::PeriodicFatou;
            periodic.push_back(cls);
        }
    for (int cls : critical) {
        if (rel.dyn_type[cls] == DynType::PeriodicFatou) continue;
        rel.dyn_type[cls] = orbit_hits(cls, periodic) ? DynType::PreperiodicFatou : DynType::Julia;
    }
}

GapSet Tower::sweep_gaps(Color c, int n) {
    const LevelData& data = level(n);
    const LevelRelation& rel = data.rel[static_cast<int>(c)];
    int n_arcs = data.angles.count();
    GapSet out;
    out.level = n;
    out.color = c;
    out.gap_of_arc.assign(n_arcs, -1);

    // Boundary cycles of the chord system: the arc after arc a starts at the
    // class predecessor of a's end angle.
    for (int a0 = 0; a0 < n_arcs; ++a0) {
        if (out.gap_of_arc[a0] >= 0) continue;
        Gap gap;
        gap.id = static_cast<int>(out.gaps.size());
        int a = a0;
        do {
            out.gap_of_arc[a] = gap.id;
            gap.arcs.push_back(a);
            gap.types.push_back(data.arc_type[a]);
            int end_idx = (a + 1) % n_arcs;
            a = rel.class_pred(end_idx);
        } while (a != a0);
        out.gaps.push_back(std::move(gap));
    }

    if (n >= 1) {
        const LevelData& up = level(n - 1);
        const GapSet& upgaps = up.gaps[static_cast<int>(c)];
        for (auto& gap : out.gaps) {
            const Angle& v = data.angles.angles[gap.arcs[0]];
            gap.parent = upgaps.gap_of_arc[up.angles.arc_containing(v)];
        }
    }
    return out;
}

std::string Tower::dump_level(Color c, int n) {
    const LevelRelation& rel = relation(c, n);
    const LevelAngles& la = angles_at(n);
    std::ostringstream os;
    for (int cls = 0; cls < rel.class_count(); ++cls) {
        os << n << " " << color_name(c) << " " << cls << " " << dyn_type_name(rel.dyn_type[cls]) << ":";
        for (int idx : rel.classes[cls]) os << " " << la.angles[idx].str();
        os << "\n";
    }
    return os.str();
}

const LevelRelation& build_level(Tower& tower, Color c, int n) { return tower.relation(c, n); }

const GapSet& gaps_of(Tower& tower, Color c, int n) { return tower.gaps(c, n); }

Int predicted_size(Tower& tower, Color c, int n, int class_id) {
    Int product = 1;
    int cls = class_id;
    for (int m = n; m >= 1; --m) {
        const LevelRelation& rel = tower.relation(c, m);
        product *= rel.local_degree[cls];
        cls = rel.image_class[cls];
    }
    return product;
}

std::optional<int> stabilization(Tower& tower, Color c, int n, const Angle& a, int cap) {
    if (cap <= n) throw std::invalid_argument("stabilization cap must exceed the class level");
    tower.build(cap);
    auto class_angles = [&](int m) {
        const LevelAngles& la = tower.angles_at(m);
        const LevelRelation& rel = tower.relation(c, m);
        int idx = la.index_of(a);
        if (idx < 0) throw std::invalid_argument("angle is not a level-" + std::to_string(m) + " angle");
        std::vector<Angle> out;
        for (int i : rel.classes[rel.class_of[idx]]) out.push_back(la.angles[i]);
        return out;
    };
    int last_change = n;
    std::vector<Angle> prev = class_angles(n);
    for (int m = n + 1; m <= cap; ++m) {
        std::vector<Angle> curc = class_angles(m);
        if (curc != prev) last_change = m;
        prev = std::move(curc);
    }
    if (last_change == cap) return std::nullopt;
    return std::max(1, last_change - n);
}

ConnectionGraph connection_graph(const LevelRelation& rel, const GapSet& gaps) {
    if (rel.level != gaps.level || rel.color != gaps.color)
        throw std::invalid_argument("connection_graph: relation/gap level or color mismatch");
    ConnectionGraph out;
    out.gap_nodes = static_cast<int>(gaps.gaps.size());
    out.class_nodes = rel.class_count();

    int n_arcs = static_cast<int>(rel.class_of.size());
    std::set<std::pair<int, int>> edges;
    for (const auto& gap : gaps.gaps) {
        for (int a : gap.arcs) {
            int corner = (a + 1) % n_arcs;
            if (!edges.emplace(gap.id, rel.class_of[corner]).second) out.duplicate_incidence = true;
        }
    }
    out.edges.assign(edges.begin(), edges.end());

    DisjointSet dsu(static_cast<std::size_t>(out.gap_nodes + out.class_nodes));
    for (const auto& [g, cls] : out.edges) dsu.unite(g, out.gap_nodes + cls);
    out.connected = true;
    for (std::size_t i = 1; i < dsu.count(); ++i)
        if (!dsu.same(0, i)) { out.connected = false; break; }
    return out;
}

} // namespace circlelam
