#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>

#include "holo/report.hpp"

namespace {

int run_analyze(const std::string& config_path, const std::string& out_path,
                const std::string& svg_path) {
    const holo::ScenarioConfig c = holo::load_config(config_path);
    const holo::Json rep = holo::run_scenario(c);
    const std::string out = !out_path.empty() ? out_path : c.outputs.report;
    if (out.empty()) throw holo::IoError("no report path given (flag or config outputs)");
    holo::write_text_file(out, rep.dump(2) + "\n");
    const std::string svg = !svg_path.empty() ? svg_path : c.outputs.svg;
    if (!svg.empty()) holo::emit_svg(rep, svg);
    std::cout << "status: " << rep.value("status", std::string("?")) << "\n";
    return 0;
}

int run_classify(const std::string& members_path, int horizon, const std::string& family,
                 int parameter) {
    std::ifstream in(members_path);
    if (!in) throw holo::IoError("cannot open members file: " + members_path);
    holo::IndexSetSample s;
    s.horizon = horizon;
    for (int n; in >> n;) s.members.push_back(n);
    std::sort(s.members.begin(), s.members.end());

    holo::FamilyKind f;
    if (family == "infinite") f = holo::FamilyKind::infinite();
    else if (family == "cofinite") f = holo::FamilyKind::cofinite(parameter);
    else if (family == "syndetic") f = holo::FamilyKind::syndetic(parameter);
    else if (family == "thick") f = holo::FamilyKind::thick(parameter);
    else throw holo::FamilyError("unknown family: " + family);

    const holo::FamilyVerdict v = holo::classify(s, f);
    holo::Json j;
    j["family"] = f.name();
    j["status"] = v.status == holo::FamilyStatus::ConsistentUpToHorizon
                      ? "ConsistentUpToHorizon"
                      : "RefutedAtHorizon";
    j["horizon"] = v.horizon;
    j["member_count_top_half"] = v.member_count_top_half;
    j["observed_tail_start"] = v.observed_tail_start;
    j["max_gap"] = v.max_gap;
    j["max_run"] = v.max_run;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_witness(const std::string& config_path, int n, const std::string& out_path) {
    const holo::ScenarioConfig c = holo::load_config(config_path);
    if (!c.witness)
        throw holo::ValidationError("witness", "config has no witness section");
    const holo::Json rep = holo::run_scenario(c, n);
    const std::string out = !out_path.empty() ? out_path : c.outputs.report;
    if (out.empty()) throw holo::IoError("no report path given (flag or config outputs)");
    holo::write_text_file(out, rep.dump(2) + "\n");
    const bool ok = rep.contains("witness") && rep["witness"].value("verified", false);
    std::cout << "witness at n = " << n << ": " << (ok ? "verified" : "not verified") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"disjoint transitivity analysis of composition operators"};
    app.require_subcommand(1);

    std::string config_path, out_path, svg_path, members_path, family = "infinite";
    int horizon = 100, parameter = 1, witness_n = 1;

    auto* analyze = app.add_subcommand("analyze", "run a scenario and write the report");
    analyze->add_option("--config", config_path, "config JSON path")->required();
    analyze->add_option("--out", out_path, "report JSON path");
    analyze->add_option("--svg", svg_path, "figure SVG path");

    auto* classify = app.add_subcommand("classify", "classify a member list against a family");
    classify->add_option("--members", members_path, "whitespace-separated integers")->required();
    classify->add_option("--horizon", horizon, "sample horizon")->required();
    classify->add_option("--family", family, "infinite|cofinite|syndetic|thick")->required();
    classify->add_option("--parameter", parameter, "family parameter");

    auto* witness = app.add_subcommand("witness", "fit and verify a witness at one index");
    witness->add_option("--config", config_path, "config JSON path")->required();
    witness->add_option("--n", witness_n, "iterate index")->required();
    witness->add_option("--out", out_path, "report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // usage errors are exit code 1
    }

    try {
        if (analyze->parsed()) return run_analyze(config_path, out_path, svg_path);
        if (classify->parsed()) return run_classify(members_path, horizon, family, parameter);
        if (witness->parsed()) return run_witness(config_path, witness_n, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
