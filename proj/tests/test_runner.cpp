#include "qub/error.hpp"
#include "qub/runner.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace qub;
using nlohmann::json;

TEST_CASE("configuration JSON round trip")
{
    json j = {{"family", "so"}, {"n", 5},           {"m", 2},       {"sign", "plus"},      {"kind", "space"},
              {"extended", true}, {"max_degree", 4}, {"format", "latex"}, {"params", {{"gamma1", "q"}}},
              {"suites", {"ybe"}}, {"star", true},   {"reality", "literal"}};
    RunConfig c = RunConfig::from_json(j);
    CHECK(c.spec.n == 5);
    CHECK(c.spec.sign == Sign::plus);
    CHECK(c.reality == RealityChoice::literal);
    CHECK(c.format == OutputFormat::latex);
    json back = c.to_json();
    CHECK(RunConfig::from_json(back).to_json() == back);
    for (const auto& [k, v] : j.items()) CHECK(back.at(k) == v);
}

TEST_CASE("invalid configurations")
{
    CHECK_THROWS_AS(RunConfig::from_json({{"family", "g2"}}), UsageError);
    CHECK_THROWS_AS(RunConfig::from_json({{"format", "html"}}), UsageError);
    CHECK_THROWS_AS(RunConfig::from_json({{"n", "three"}}), UsageError);
    RunConfig c;
    c.max_degree = 1;
    CHECK_THROWS_AS(c.validate(), UsageError);
    c.max_degree = 3;
    c.suites = {"nonsense"};
    CHECK_THROWS_AS(c.validate(), UsageError);
}

TEST_CASE("default verification passes across families")
{
    const char* configs[] = {
        R"({"family":"sl","n":2})",
        R"({"family":"sl","n":3})",
        R"({"family":"so","n":4})",
        R"({"family":"so","n":3,"m":2,"extended":true,"star":true})",
        R"({"family":"so","n":3,"sphere":true})",
        R"({"family":"sl","n":2,"kind":"heisenberg","epsilon":-1,"m":2})",
    };
    for (const char* cfg : configs) {
        CAPTURE(cfg);
        auto out = run_verify(RunConfig::from_json(json::parse(cfg)));
        CHECK(out.pass);
        CHECK(out.report.at("checks").size() > 5);
    }
}

TEST_CASE("unbraid report carries families and checks")
{
    RunConfig c = RunConfig::from_json({{"m", 3}, {"format", "json"}, {"star", true}});
    auto out = run_unbraid(c);
    CHECK(out.pass);
    CHECK(out.report.at("families").size() == 2);
    CHECK(out.report.at("families")[0].at("generators").size() == 6);
    CHECK(out.report.at("families")[1].at("generators").size() == 3);
    CHECK(json::parse(out.rendered) == out.report);
    c.reality = RealityChoice::trivial;
    CHECK_FALSE(run_unbraid(c).pass);
}

TEST_CASE("user-supplied realization")
{
    RunConfig c = RunConfig::from_json({{"m", 2}});
    Space s = build_space([] {
        SpaceSpec sp;
        sp.copies = 2;
        sp.extended = true;
        return sp;
    }());
    c.phi_text = write_phi_table(build_phi_euclidean(s, Sign::minus), s);
    CHECK(run_unbraid(c).pass);
    // breaking one image is caught by the checks
    auto pos = c.phi_text.find("image 0 -1 = (q^(3/2) + q^(1/2))");
    REQUIRE(pos != std::string::npos);
    c.phi_text.replace(pos, std::string("image 0 -1 = (q^(3/2) + q^(1/2))").size(), "image 0 -1 = (q^(3/2))");
    CHECK_FALSE(run_unbraid(c).pass);
}

TEST_CASE("relation listing")
{
    auto out = run_relations(RunConfig::from_json({{"family", "so"}, {"n", 3}, {"m", 2}}));
    CHECK(out.report.at("rules").size() == 15);
    CHECK(out.report.at("counts").at("x") == 6);
    CHECK(out.report.at("counts").at("cross-x") == 9);
}
