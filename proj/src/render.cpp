#include "circlelam/render.hpp"

#include "circlelam/relations.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace circlelam {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
    char buf[40];
    // normalize negative zero so output is stable
    if (v == 0.0) v = 0.0;
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

double angle_to_rad(const Angle& a) {
    return 2.0 * kPi * boost::multiprecision::numerator(a.value()).convert_to<double>() /
           boost::multiprecision::denominator(a.value()).convert_to<double>();
}

struct Pt {
    double x, y;
};

const char* kPalette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                          "#66ccee", "#aa3377", "#bbbbbb", "#222222"};

} // namespace

std::string render_lamination(Tower& tower, int n, const DiskStyle& style) {
    const LevelAngles& la = tower.angles_at(n);
    const LevelRelation& white = tower.relation(Color::White, n);
    const LevelRelation& black = tower.relation(Color::Black, n);

    double r = style.radius;
    double size = 2.0 * r * 1.35;
    double cx = size / 2, cy = size / 2;
    auto on_circle = [&](const Angle& a, double radius) {
        double t = angle_to_rad(a);
        return Pt{cx + radius * std::cos(t), cy - radius * std::sin(t)};
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size) << "\" height=\""
        << fmt(size) << "\" viewBox=\"0 0 " << fmt(size) << " " << fmt(size) << "\">\n";
    svg << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(r)
        << "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.5\"/>\n";

    if (style.ticks) {
        svg << "<g id=\"ticks\" stroke=\"#222222\" stroke-width=\"0.8\">\n";
        for (const auto& a : la.angles) {
            Pt p = on_circle(a, r);
            Pt q = on_circle(a, r * 1.03);
            svg << "<line x1=\"" << fmt(p.x) << "\" y1=\"" << fmt(p.y) << "\" x2=\"" << fmt(q.x)
                << "\" y2=\"" << fmt(q.y) << "\"/>\n";
        }
        svg << "</g>\n";
    }

    auto emit_class = [&](const LevelRelation& rel, bool outside, const char* color) {
        for (int cls = 0; cls < rel.class_count(); ++cls) {
            if (rel.class_size(cls) < 2) continue;
            const auto& members = rel.classes[cls];
            std::string angles_attr;
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (i) angles_attr += " ";
                angles_attr += la.angles[members[i]].str();
            }
            std::ostringstream d;
            if (!outside) {
                // straight chords; a polygon when the class has 3+ angles
                Pt p0 = on_circle(la.angles[members[0]], r);
                d << "M " << fmt(p0.x) << " " << fmt(p0.y);
                std::size_t last = members.size();
                if (members.size() == 2 || style.leaf_mode == DiskStyle::LeafMode::Chord) {
                    for (std::size_t i = 1; i < members.size(); ++i) {
                        Pt p = on_circle(la.angles[members[i]], r);
                        d << " L " << fmt(p.x) << " " << fmt(p.y);
                    }
                    (void)last;
                } else {
                    for (std::size_t i = 1; i <= members.size(); ++i) {
                        Pt p = on_circle(la.angles[members[i % members.size()]], r);
                        d << " L " << fmt(p.x) << " " << fmt(p.y);
                    }
                }
            } else {
                // mirrored outside: one bulged quadratic per succeeding pair
                std::size_t m = members.size();
                Pt p0 = on_circle(la.angles[members[0]], r);
                d << "M " << fmt(p0.x) << " " << fmt(p0.y);
                std::size_t edges = m == 2 ? 1 : m;
                for (std::size_t i = 0; i < edges; ++i) {
                    const Angle& a = la.angles[members[i]];
                    const Angle& b = la.angles[members[(i + 1) % m]];
                    Rat span = ccw_distance(a, b);
                    double spanf = boost::multiprecision::numerator(span).convert_to<double>() /
                                   boost::multiprecision::denominator(span).convert_to<double>();
                    Angle mid = ccw_advance(a, span / 2);
                    double bulge = 1.0 + 0.7 * std::sin(kPi * spanf);
                    Pt c = on_circle(mid, r * bulge);
                    Pt p = on_circle(b, r);
                    d << " Q " << fmt(c.x) << " " << fmt(c.y) << " " << fmt(p.x) << " " << fmt(p.y);
                }
            }
            svg << "<path class=\"leaf\" data-angles=\"" << angles_attr << "\" d=\"" << d.str()
                << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\"/>\n";
        }
    };

    svg << "<g id=\"white-leaves\">\n";
    emit_class(white, false, "#4477aa");
    svg << "</g>\n<g id=\"black-leaves\">\n";
    emit_class(black, style.black_outside, "#ee6677");
    svg << "</g>\n</svg>\n";
    return svg.str();
}

TurtleTrace turtle_trace(Tower& tower, const GeometrySpec& geometry, int n) {
    int k = tower.k();
    int d = tower.degree();
    if (static_cast<int>(geometry.edge_vectors.size()) != k)
        throw std::invalid_argument("geometry needs one edge vector per arc type");
    double sx = 0, sy = 0, scale = 0;
    for (const auto& v : geometry.edge_vectors) {
        sx += v[0];
        sy += v[1];
        scale = std::max(scale, std::hypot(v[0], v[1]));
    }
    if (std::hypot(sx, sy) > 1e-9 * std::max(scale, 1.0))
        throw std::invalid_argument("geometry edge vectors do not close up");
    std::vector<int> orders = geometry.vertex_orders;
    if (orders.empty()) orders.assign(k, 1);
    if (static_cast<int>(orders.size()) != k)
        throw std::invalid_argument("geometry needs one vertex order per type");
    double lambda = geometry.lambda > 0 ? geometry.lambda : std::sqrt(static_cast<double>(d));

    const LevelAngles& la = tower.angles_at(n);
    const auto& types = tower.arc_types(n);
    const LevelRelation& white = tower.relation(Color::White, n);
    const LevelRelation& black = tower.relation(Color::Black, n);
    Partition vertices = level_join(tower, n);
    const ZeroData& zero = tower.pair().zero;
    int count = la.count();

    // Per vertex class: the cone angle (2 pi away from the zero-level set,
    // 2 pi / order at a class holding a zero angle) and the boundary-walk
    // position of every member, which orders the tile wedges around the
    // vertex.
    std::vector<double> vclass_cone(vertices.block_count(), 2.0 * kPi);
    std::vector<int> walk_pos(count, -1);
    for (int v = 0; v < vertices.block_count(); ++v) {
        for (int idx : vertices.blocks[v]) {
            int zi = zero.angle_index(la.angles[idx]);
            if (zi >= 0) vclass_cone[v] = 2.0 * kPi / orders[zi];
        }
        VertexWalk walk = vertex_walk(white, black, vertices.blocks[v]);
        if (!walk.closed)
            throw std::invalid_argument("vertex wedges do not close; pair is not traceable");
        for (std::size_t r = 0; r < walk.white_angle.size(); ++r)
            walk_pos[walk.white_angle[r]] = static_cast<int>(r);
    }

    std::vector<double> base_angle(geometry.edge_vectors.size());
    for (std::size_t t = 0; t < geometry.edge_vectors.size(); ++t)
        base_angle[t] = std::atan2(geometry.edge_vectors[t][1], geometry.edge_vectors[t][0]);

    TurtleTrace trace;
    trace.vertices.reserve(count + 1);
    double x = 0, y = 0, heading = 0;
    double shrink = std::pow(lambda, -n);
    trace.vertices.push_back({x, y});
    for (int i = 0; i < count; ++i) {
        const auto& v = geometry.edge_vectors[types[i]];
        double c = std::cos(heading), s = std::sin(heading);
        x += (c * v[0] - s * v[1]) * shrink;
        y += (s * v[0] + c * v[1]) * shrink;
        trace.vertices.push_back({x, y});

        // turn at the end vertex: the white-tile incidence slots of the
        // incoming and outgoing edges are 2*walk_pos apart
        int end_idx = (i + 1) % count;
        int vc = vertices.block_of[end_idx];
        int m = static_cast<int>(vertices.blocks[vc].size());
        double theta = vclass_cone[vc] / (2.0 * m);
        int slot_in = 2 * walk_pos[end_idx];
        int slot_out = 2 * walk_pos[white.class_succ(end_idx)];
        int wedges = ((slot_out - slot_in) % (2 * m) + 2 * m) % (2 * m) + 1;
        double interior = theta * wedges;
        // heading tracks the deviation from the configured tile shape
        double shape_turn = base_angle[types[(i + 1) % count]] - base_angle[types[i]];
        heading += kPi - interior - shape_turn;
    }
    trace.closure_error = std::hypot(trace.vertices.back()[0] - trace.vertices.front()[0],
                                     trace.vertices.back()[1] - trace.vertices.front()[1]);
    return trace;
}

std::string render_tiling(Tower& tower, const TurtleTrace& trace, int n, int coarse_level,
                          const DiskStyle& style) {
    const LevelAngles& la = tower.angles_at(n);
    int count = la.count();
    if (static_cast<int>(trace.vertices.size()) != count + 1)
        throw std::invalid_argument("trace does not match the level");
    Int dn = boost::multiprecision::pow(Int(tower.degree()), coarse_level);

    double minx = 0, miny = 0, maxx = 0, maxy = 0;
    for (const auto& p : trace.vertices) {
        minx = std::min(minx, p[0]);
        maxx = std::max(maxx, p[0]);
        miny = std::min(miny, p[1]);
        maxy = std::max(maxy, p[1]);
    }
    double span = std::max(maxx - minx, maxy - miny);
    if (span <= 0) span = 1;
    double margin = 0.05 * span;
    double view = span + 2 * margin;
    double out_size = 2.0 * style.radius;
    double s = out_size / view;
    auto tx = [&](double vx) { return (vx - minx + margin) * s; };
    auto ty = [&](double vy) { return out_size - (vy - miny + margin) * s; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(out_size) << "\" height=\""
        << fmt(out_size) << "\" viewBox=\"0 0 " << fmt(out_size) << " " << fmt(out_size) << "\">\n";

    int palette_size = static_cast<int>(sizeof(kPalette) / sizeof(kPalette[0]));
    int prev_color = -1;
    std::ostringstream path;
    auto flush = [&]() {
        if (prev_color >= 0)
            svg << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\""
                << kPalette[prev_color % palette_size] << "\" stroke-width=\"1.0\"/>\n";
        path.str("");
    };
    for (int i = 0; i < count; ++i) {
        // color by the coarse interval [j/d^{n'}, (j+1)/d^{n'}] holding the arc midpoint
        Rat mid = la.angles[i].value() + ccw_distance(la.angles[i], la.angles[(i + 1) % count]) / 2;
        Rat scaled = mid * dn;
        Int interval = boost::multiprecision::numerator(scaled) /
                       boost::multiprecision::denominator(scaled);
        int color = interval.convert_to<int>() % palette_size;
        if (color != prev_color) {
            flush();
            prev_color = color;
            path << "M " << fmt(tx(trace.vertices[i][0])) << " " << fmt(ty(trace.vertices[i][1]));
        }
        path << " L " << fmt(tx(trace.vertices[i + 1][0])) << " " << fmt(ty(trace.vertices[i + 1][1]));
    }
    flush();
    svg << "</svg>\n";
    return svg.str();
}

} // namespace circlelam
