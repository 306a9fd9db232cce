#include "circlelam/portrait.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace circlelam {

using nlohmann::json;

int ZeroData::angle_index(const Angle& a) const {
    auto it = std::lower_bound(zero_angles.begin(), zero_angles.end(), a);
    if (it == zero_angles.end() || *it != a) return -1;
    return static_cast<int>(it - zero_angles.begin());
}

int ZeroData::arc_containing(const Angle& a) const {
    // arc j is [zero_angles[j], zero_angles[j+1]); the wrap arc k-1 takes the rest.
    auto it = std::upper_bound(zero_angles.begin(), zero_angles.end(), a);
    if (it == zero_angles.begin()) return k - 1; // a below the smallest 0-angle
    return static_cast<int>(it - zero_angles.begin()) - 1;
}

namespace {

[[noreturn]] void fail_at(const std::string& document, size_t byte, const std::string& what) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < document.size(); ++i) {
        if (document[i] == '\n') { ++line; col = 1; } else { ++col; }
    }
    std::ostringstream os;
    os << "portrait config error at line " << line << ", column " << col << ": " << what;
    throw std::invalid_argument(os.str());
}

std::vector<std::vector<Angle>> parse_classes(const json& arr, const char* color) {
    if (!arr.is_array()) throw std::invalid_argument(std::string(color) + " must be an array of angle arrays");
    std::vector<std::vector<Angle>> classes;
    for (const auto& cls : arr) {
        if (!cls.is_array()) throw std::invalid_argument(std::string(color) + " classes must be arrays");
        std::vector<Angle> angles;
        for (const auto& item : cls) {
            if (!item.is_string()) throw std::invalid_argument(std::string(color) + " angles must be \"p/q\" strings");
            angles.push_back(Angle::parse(item.get<std::string>()));
        }
        std::sort(angles.begin(), angles.end());
        if (std::adjacent_find(angles.begin(), angles.end()) != angles.end())
            throw std::invalid_argument(std::string(color) + " class repeats an angle");
        if (angles.size() < 2)
            throw std::invalid_argument(std::string(color) + " class of size < 2 (trivial classes are implicit)");
        classes.push_back(std::move(angles));
    }
    return classes;
}

GeometrySpec parse_geometry(const json& g) {
    GeometrySpec spec;
    if (!g.is_object()) throw std::invalid_argument("geometry must be an object");
    for (const auto& v : g.at("vectors")) {
        if (!v.is_array() || v.size() != 2) throw std::invalid_argument("geometry vectors must be [x, y] pairs");
        spec.edge_vectors.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    if (g.contains("orders")) {
        for (const auto& o : g.at("orders")) {
            int ord = o.get<int>();
            if (ord < 1) throw std::invalid_argument("geometry orders must be >= 1");
            spec.vertex_orders.push_back(ord);
        }
    }
    if (g.contains("lambda")) spec.lambda = g.at("lambda").get<double>();
    return spec;
}

} // namespace

PortraitPair parse_portrait_pair(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        fail_at(document, e.byte ? e.byte - 1 : 0, e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("portrait config must be a JSON object");

    PortraitPair pair;
    try {
        int degree = doc.at("degree").get<int>();
        if (degree < 2) throw std::invalid_argument("degree must be >= 2");
        pair.white.degree = degree;
        pair.black.degree = degree;
        pair.white.classes = parse_classes(doc.at("white"), "white");
        pair.black.classes = parse_classes(doc.at("black"), "black");
        if (doc.contains("white_degree") || doc.contains("black_degree")) {
            // Split-degree documents are a parse-time error when they disagree.
            int wd = doc.value("white_degree", degree);
            int bd = doc.value("black_degree", degree);
            if (wd != bd) throw std::invalid_argument("degree mismatch between white and black portraits");
            pair.white.degree = wd;
            pair.black.degree = bd;
        }
        if (doc.contains("geometry")) pair.geometry = parse_geometry(doc.at("geometry"));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("portrait config error: ") + e.what());
    }

    for (const auto* portrait : {&pair.white, &pair.black}) {
        std::set<Angle> seen;
        for (const auto& cls : portrait->classes)
            for (const auto& a : cls)
                if (!seen.insert(a).second)
                    throw std::invalid_argument("portrait classes must be pairwise disjoint (repeated " + a.str() + ")");
    }

    pair.zero = orbit_set(pair.white, pair.black);
    return pair;
}

std::string serialize_portrait_pair(const PortraitPair& pair) {
    json doc;
    doc["degree"] = pair.degree();
    auto emit = [](const CriticalPortrait& p) {
        json arr = json::array();
        for (const auto& cls : p.classes) {
            json c = json::array();
            for (const auto& a : cls) c.push_back(a.str());
            arr.push_back(c);
        }
        return arr;
    };
    doc["white"] = emit(pair.white);
    doc["black"] = emit(pair.black);
    if (pair.geometry) {
        json g;
        g["vectors"] = json::array();
        for (const auto& v : pair.geometry->edge_vectors) g["vectors"].push_back({v[0], v[1]});
        if (!pair.geometry->vertex_orders.empty()) g["orders"] = pair.geometry->vertex_orders;
        if (pair.geometry->lambda > 0) g["lambda"] = pair.geometry->lambda;
        doc["geometry"] = g;
    }
    return doc.dump(2) + "\n";
}

ZeroData orbit_set(const CriticalPortrait& white, const CriticalPortrait& black) {
    if (white.degree != black.degree)
        throw std::invalid_argument("degree mismatch between white and black portraits");
    int d = white.degree;
    std::set<Angle> zero;
    for (const auto* portrait : {&white, &black}) {
        for (const auto& cls : portrait->classes) {
            for (const auto& a : cls) {
                // Forward orbit starting at mu(a); orbits of rationals terminate.
                Angle t = mu(a, d);
                while (zero.insert(t).second) t = mu(t, d);
            }
        }
    }
    ZeroData out;
    out.zero_angles.assign(zero.begin(), zero.end());
    out.k = static_cast<int>(out.zero_angles.size());
    for (int j = 0; j < out.k; ++j) {
        const Angle& s = out.zero_angles[j];
        const Angle& e = out.zero_angles[(j + 1) % out.k];
        out.arcs.push_back({s, e});
        out.arc_lengths.push_back(out.k == 1 ? Rat(1) : ccw_distance(s, e));
    }
    return out;
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    os << "verdict: " << (pass ? "pass" : "fail") << "\n";
    os << "separation_depth: ";
    if (separation_certified)
        os << separation_depth << "\n";
    else
        os << "inconclusive(cap=" << depth_cap << ")\n";
    os << "violations: " << violations.size() << "\n";
    for (const auto& v : violations) os << "  axiom=" << v.axiom << " " << v.witness << "\n";
    return os.str();
}

} // namespace circlelam
