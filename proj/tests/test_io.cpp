#include <sstream>

#include "doctest.h"
#include "qnev/error.hpp"
#include "qnev/io.hpp"
#include "support.hpp"

using namespace qnev;
using qtest::Gen;

TEST_CASE("quaternion and target literals") {
    CHECK(quaternion_from_json(json::parse("[0.5, 0.7, 0, 0]")) == Quaternion{0.5, 0.7, 0, 0});
    CHECK(quaternion_from_json(json(2.0)) == Quaternion(2.0));
    CHECK(!target_from_json(json("inf")).has_value());
    CHECK(*target_from_json(json::parse("[1,0,0,0]")) == kOne);
    CHECK(target_to_json(std::nullopt) == json("inf"));
    CHECK_THROWS_AS(quaternion_from_json(json::parse("[1,2,3]")), Error);
    CHECK_THROWS_AS(target_from_json(json("infinity")), Error);
    CHECK_THROWS_AS(quaternion_from_json(json::parse("[1,2,3,\"x\"]")), Error);
}

TEST_CASE("polynomial and rational round trips") {
    Gen g(151);
    for (int t = 0; t < 50; ++t) {
        LeftPoly f = g.poly(g.integer(0, 5));
        CHECK(poly_from_json(json::parse(to_json(f).dump())) == f);
        SemiregularRational r(g.poly(g.integer(0, 3)), g.poly(g.integer(0, 2)));
        SemiregularRational back = rational_from_json(json::parse(to_json(r).dump()));
        CHECK(back.num() == r.num());
        CHECK(back.den() == r.den());
    }
    SemiregularRational p = rational_from_json(json::parse("[[-0.5,-0.7,0,0],[1,0,0,0]]"));
    CHECK(p.is_polynomial());
    CHECK(p.num() == LeftPoly::linear({0.5, 0.7, 0, 0}));
    SemiregularRational q = rational_from_json(json::parse(R"({"num": [[1,0,0,0]]})"));
    CHECK(q.den() == LeftPoly::constant(kOne));
    CHECK_THROWS_AS(rational_from_json(json::parse(R"({"num": [[1,0,0,0]], "den": []})")), Error);
    CHECK_THROWS_AS(rational_from_json(json::parse(R"({"den": [[1,0,0,0]]})")), Error);
}

TEST_CASE("divisor round trip") {
    SphereDivisor d{{{{0.5, 0.7}, 1}, {{-0.2, 0.0}, -2}}, 3};
    json j = to_json(d);
    CHECK(j["origin_order"] == 3);
    CHECK(j["entries"][1]["order"] == -2);
    SphereDivisor back = divisor_from_json(j);
    REQUIRE(back.entries.size() == 2);
    CHECK(back.entries[0].sphere == d.entries[0].sphere);
    CHECK(back.entries[1].order == -2);
    CHECK(back.origin_order == 3);
    SphereDivisor bare = divisor_from_json(json::parse(R"([{"re":1,"im":0,"order":2}])"));
    CHECK(bare.entries.size() == 1);
}

TEST_CASE("CSV output") {
    std::vector<ProfileRow> rows(3);
    for (int k = 0; k < 3; ++k) {
        rows[k].r = 1.0 / 3.0 + k;
        rows[k].T = 0.1 * k;
    }
    std::ostringstream os;
    write_csv(os, rows);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == kProfileColumns);
    int n = 0;
    while (std::getline(is, line)) {
        ++n;
        double r = std::stod(line.substr(0, line.find(',')));
        CHECK(r == rows[n - 1].r);
    }
    CHECK(n == 3);

    std::ostringstream fm;
    write_csv(fm, std::vector<FmtRow>(2));
    CHECK(fm.str().rfind(kFmtColumns, 0) == 0);
    std::ostringstream jr;
    write_csv(jr, std::vector<JensenReport>(1));
    CHECK(jr.str().find("corrected") != std::string::npos);
}

TEST_CASE("report JSON") {
    JensenReport rep;
    rep.radius = 2.0;
    rep.residual = 1e-4;
    json j = to_json(rep);
    CHECK(j["kernel_convention"] == "corrected");
    CHECK(j["residual"].get<double>() == 1e-4);
    std::vector<Check> checks{{"x", 1.0, 2.0, true, false}};
    CHECK(to_json(checks)[0]["gated"] == false);
}
