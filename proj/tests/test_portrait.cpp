#include "circlelam/portrait.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace circlelam;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(CIRCLELAM_DATA_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("parsing the example portraits") {
    PortraitPair r4 = parse_portrait_pair(slurp("r4.portrait"));
    CHECK(r4.degree() == 3);
    CHECK(r4.zero.k == 3);
    CHECK(r4.zero.zero_angles == std::vector<Angle>{Angle(), Angle(1, 3), Angle(1, 2)});

    PortraitPair r2 = parse_portrait_pair(slurp("r2.portrait"));
    CHECK(r2.degree() == 4);
    CHECK(r2.zero.k == 3);
    CHECK(r2.zero.zero_angles == std::vector<Angle>{Angle(), Angle(7, 15), Angle(13, 15)});

    PortraitPair g = parse_portrait_pair(slurp("g.portrait"));
    CHECK(g.zero.k == 4);
    CHECK(g.zero.zero_angles ==
          std::vector<Angle>{Angle(), Angle(1, 4), Angle(1, 2), Angle(3, 4)});
}

TEST_CASE("parse errors carry a reason") {
    CHECK_THROWS_WITH_AS(parse_portrait_pair("{\"degree\": 3, \"white\": [[\"1/9\"]], \"black\": []}"),
                         doctest::Contains("size < 2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_portrait_pair("{\"degree\": 3"), std::invalid_argument);
    try {
        parse_portrait_pair("{\n  \"degree\": 3,\n  broken\n}");
        FAIL("expected a syntax error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    // degree mismatch between the colors
    CHECK_THROWS_WITH_AS(
        parse_portrait_pair("{\"degree\": 3, \"white_degree\": 3, \"black_degree\": 4, "
                            "\"white\": [[\"1/9\",\"4/9\",\"7/9\"]], \"black\": [[\"1/3\",\"2/3\"]]}"),
        doctest::Contains("degree mismatch"), std::invalid_argument);
}

TEST_CASE("serialize/parse round trip is the identity") {
    for (const char* name : {"g.portrait", "r4.portrait", "r2.portrait"}) {
        PortraitPair pair = parse_portrait_pair(slurp(name));
        std::string text = serialize_portrait_pair(pair);
        PortraitPair again = parse_portrait_pair(text);
        CHECK(serialize_portrait_pair(again) == text);
        CHECK(again.zero.zero_angles == pair.zero.zero_angles);
    }
}

TEST_CASE("zero data is forward invariant with arc lengths summing to one") {
    for (const char* name : {"g.portrait", "r4.portrait", "r2.portrait", "synthetic_d2.portrait"}) {
        PortraitPair pair = parse_portrait_pair(slurp(name));
        Rat total = 0;
        for (const auto& len : pair.zero.arc_lengths) {
            CHECK(len > 0);
            total += len;
        }
        CHECK(total == Rat(1));
        for (const auto& z : pair.zero.zero_angles)
            CHECK(pair.zero.angle_index(mu(z, pair.degree())) >= 0);
    }
}

TEST_CASE("r4 zero arcs have the expected exact lengths") {
    PortraitPair r4 = parse_portrait_pair(slurp("r4.portrait"));
    CHECK(r4.zero.arc_lengths == std::vector<Rat>{Rat(1, 3), Rat(1, 6), Rat(1, 2)});
}

TEST_CASE("validation passes the paper pairs with small separation depth") {
    for (const char* name : {"g.portrait", "r4.portrait", "r2.portrait"}) {
        CAPTURE(name);
        ValidationReport report = validate(parse_portrait_pair(slurp(name)), 8);
        CHECK(report.pass);
        CHECK(report.separation_certified);
        CHECK(report.separation_depth <= 4);
        CHECK(report.violations.empty());
    }
}

TEST_CASE("each mutant fails with its axiom id") {
    auto axioms_of = [](const ValidationReport& r) {
        std::string axioms;
        for (const auto& v : r.violations)
            if (axioms.find(v.axiom) == std::string::npos) axioms += v.axiom;
        return axioms;
    };
    ValidationReport r = validate(parse_portrait_pair(slurp("broken_single_image.portrait")), 8);
    CHECK_FALSE(r.pass);
    CHECK(axioms_of(r).find('a') != std::string::npos);

    r = validate(parse_portrait_pair(slurp("broken_degree_sum.portrait")), 8);
    CHECK_FALSE(r.pass);
    CHECK(axioms_of(r).find('b') != std::string::npos);

    r = validate(parse_portrait_pair(slurp("broken_crossing.portrait")), 8);
    CHECK_FALSE(r.pass);
    CHECK(axioms_of(r).find('c') != std::string::npos);

    r = validate(parse_portrait_pair(slurp("broken_zero_pair.portrait")), 8);
    CHECK_FALSE(r.pass);
    CHECK(axioms_of(r) == "d");

    r = validate(parse_portrait_pair(slurp("broken_cnc.portrait")), 8);
    CHECK_FALSE(r.pass);
    CHECK(axioms_of(r).find('e') != std::string::npos);
}

TEST_CASE("degree sums match d-1 for valid pairs") {
    for (const char* name : {"g.portrait", "r4.portrait", "r2.portrait"}) {
        PortraitPair pair = parse_portrait_pair(slurp(name));
        for (const auto* portrait : {&pair.white, &pair.black}) {
            int sum = 0;
            for (const auto& cls : portrait->classes) sum += static_cast<int>(cls.size()) - 1;
            CHECK(sum == pair.degree() - 1);
        }
    }
}

TEST_CASE("validate is deterministic and idempotent") {
    PortraitPair pair = parse_portrait_pair(slurp("g.portrait"));
    ValidationReport a = validate(pair, 8);
    ValidationReport b = validate(pair, 8);
    CHECK(a.to_text() == b.to_text());
}
