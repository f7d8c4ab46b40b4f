#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "holo/report.hpp"

using namespace holo;

namespace {

Json base_config() {
    return Json{
        {"schema_version", 1},
        {"domain", {{"base", "disk"}}},
        {"maps",
         Json::array({Json{{"type", "mobius"},
                           {"a", {1, 0}},
                           {"b", {0.5, 0}},
                           {"c", {0.5, 0}},
                           {"d", {1, 0}}},
                      Json{{"type", "composite"},
                           {"parts", Json::array({Json{{"type", "mobius"},
                                                       {"a", {1, 0}},
                                                       {"b", {0.5, 0}},
                                                       {"c", {0.5, 0}},
                                                       {"d", {1, 0}}},
                                                  Json{{"type", "mobius"},
                                                       {"a", {1, 0}},
                                                       {"b", {0.5, 0}},
                                                       {"c", {0.5, 0}},
                                                       {"d", {1, 0}}}})}}})},
        {"family", {{"kind", "infinite"}}},
        {"compacts", Json::array({Json{{"type", "disk"}, {"center", {0, 0}}, {"radius", 0.3}}})},
        {"horizon", 20}};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("parse_config accepts the minimal document") {
    const auto c = parse_config(base_config());
    CHECK(c.maps.size() == 2);
    CHECK(c.compacts.size() == 1);
    CHECK(c.horizon == 20);
    CHECK(c.family.variant == FamilyKind::Variant::Infinite);
    CHECK(c.tolerances.separation == kSeparationTol);
    CHECK(c.seed == 1);
    CHECK(c.echo == base_config());
}

TEST_CASE("parse_config rejections") {
    auto doc = base_config();
    doc["fooo"] = 1;
    CHECK_THROWS_AS(parse_config(doc), ParseError);

    doc = base_config();
    doc["schema_version"] = 2;
    CHECK_THROWS_AS(parse_config(doc), ValidationError);

    doc = base_config();
    doc["horizon"] = 5;
    CHECK_THROWS_AS(parse_config(doc), ValidationError);

    // degenerate mobius: ad - bc = 0, named field
    doc = base_config();
    doc["maps"][0] =
        Json{{"type", "mobius"}, {"a", {1, 0}}, {"b", {1, 0}}, {"c", {1, 0}}, {"d", {1, 0}}};
    try {
        parse_config(doc);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.field == "maps[0]");
    }

    doc = base_config();
    doc["maps"][0]["a"] = "not-a-complex";
    CHECK_THROWS_AS(parse_config(doc), ParseError);

    doc = base_config();
    doc["family"] = Json{{"kind", "cofinite"}, {"parameter", 0}};
    CHECK_THROWS_AS(parse_config(doc), ValidationError);

    doc = base_config();
    doc["witness"] = Json{{"targets", Json::array({Json{0, 0}, Json{1, 0}})}};
    CHECK_THROWS_AS(parse_config(doc), ValidationError);  // needs maps + 1 targets
}

TEST_CASE("exhaustion compacts expand into depth terms") {
    auto doc = base_config();
    doc["compacts"] = Json::array(
        {Json{{"type", "exhaustion"},
              {"depth", 3},
              {"around", Json{{"type", "disk"}, {"center", {0, 0}}, {"radius", 0.2}}}}});
    const auto c = parse_config(doc);
    CHECK(c.compacts.size() == 3);
}

TEST_CASE("run_scenario on the disk fixture") {
    const auto c = parse_config(base_config());
    const auto rep = run_scenario(c);
    CHECK(rep["schema_version"] == 1);
    CHECK(rep["version"] == kVersion);
    CHECK(rep["config"] == c.echo);
    CHECK(rep["status"] == "ConsistentUpToHorizon");
    CHECK(rep["domain_class"] == "simply_connected");
    REQUIRE(rep["per_compact"].size() == 1);
    const auto& pc = rep["per_compact"][0];
    CHECK(pc["members"].size() > 0);
    CHECK(pc["family_verdict"]["status"] == "ConsistentUpToHorizon");
    // evidence margins present and positive for every member
    REQUIRE(pc["evidence"].size() == pc["members"].size());
    for (const auto& e : pc["evidence"]) CHECK(e["margin"].get<double>() > 0);
    CHECK(rep["figures"]["images"].size() > 0);
    CHECK(rep["timing"]["model"] == "operation-counts");
    CHECK(rep["timing"]["indices_scanned"] == 20);
    CHECK_FALSE(rep.contains("error"));
}

TEST_CASE("run_scenario on an annulus: impossible, no figures") {
    auto doc = base_config();
    doc["domain"] = Json{{"base", "disk"},
                         {"radius", 3.0},
                         {"excluded", Json::array({Json{{"center", {0, 0}}, {"radius", 1.0}}})},
                         {"class", "finitely_connected"}};
    doc["maps"] = Json::array({Json{{"type", "affine"}, {"a", {0, 1}}, {"b", {0, 0}}},
                               Json{{"type", "affine"}, {"a", {0, -1}}, {"b", {0, 0}}}});
    doc["compacts"] =
        Json::array({Json{{"type", "disk"}, {"center", {2, 0}}, {"radius", 0.2}}});
    const auto rep = run_scenario(parse_config(doc));
    CHECK(rep["status"] == "ProvenImpossible");
    CHECK(rep["per_compact"].empty());
    CHECK_FALSE(rep.contains("figures"));
    CHECK(rep["narrative"].size() > 0);
}

TEST_CASE("byte determinism of the report document") {
    const auto c = parse_config(base_config());
    const auto a = run_scenario(c).dump(2);
    const auto b = run_scenario(c).dump(2);
    CHECK(a == b);
    // round trip: the dumped report parses back to the same document
    CHECK(Json::parse(a) == run_scenario(c));
}

TEST_CASE("witness section end to end") {
    auto doc = base_config();
    doc["domain"] = Json{{"base", "plane"}};
    doc["maps"] = Json::array({Json{{"type", "affine"}, {"a", {1, 0}}, {"b", {3, 0}}},
                               Json{{"type", "affine"}, {"a", {1, 0}}, {"b", {0, 3}}}});
    doc["horizon"] = 10;
    doc["compacts"] =
        Json::array({Json{{"type", "disk"}, {"center", {0, 0}}, {"radius", 0.15}}});
    doc["witness"] = Json{{"targets", Json::array({Json{0, 0}, Json{1, 0}, Json{2, 0}})},
                          {"max_degree", 60}};
    const auto rep = run_scenario(parse_config(doc), 1);
    CHECK(rep["status"] == "OutsideHypothesis");
    REQUIRE(rep.contains("witness"));
    const auto& w = rep["witness"];
    CHECK(w["n"] == 1);
    CHECK(w["verified"] == true);
    CHECK(w["coefficients"].size() > 0);
    for (const auto& e : w["sup_errors"]) CHECK(e.get<double>() < 1e-6);
    CHECK(w["statement"].get<std::string>().find("n") != std::string::npos);

    // witness index without a witness config: incomplete, not a throw
    const auto bad = run_scenario(parse_config(base_config()), 1);
    CHECK(bad["status"] == "incomplete");
    CHECK(bad.contains("error"));
}

TEST_CASE("svg emission") {
    const auto rep = run_scenario(parse_config(base_config()));
    const std::string p1 = "/tmp/holo_test_a.svg", p2 = "/tmp/holo_test_b.svg";
    emit_svg(rep, p1);
    emit_svg(rep, p2);
    const auto s1 = slurp(p1);
    CHECK(s1 == slurp(p2));  // byte-deterministic
    CHECK(s1.find("<svg") != std::string::npos);
    CHECK(s1.find("evenodd") != std::string::npos);   // compact with holes support
    CHECK(s1.find("<text") != std::string::npos);      // legend entries
    CHECK(s1.find("monospace") != std::string::npos);
    CHECK(s1.rfind("</svg>") != std::string::npos);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("file io errors") {
    CHECK_THROWS_AS(write_text_file("/nonexistent_dir_zz/x.txt", "y"), IoError);
    CHECK_THROWS_AS(load_config("/nonexistent_dir_zz/c.json"), ParseError);
}
