#include "holo/config.hpp"

#include <algorithm>
#include <fstream>

namespace holo {

namespace {

void check_keys(const Json& obj, const std::vector<std::string>& allowed,
                const std::string& path) {
    if (!obj.is_object()) throw ParseError(path + ": expected an object");
    for (const auto& [k, v] : obj.items())
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ParseError(path + ": unknown key \"" + k + "\"");
}

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw ParseError(path + ": missing key \"" + key + "\"");
    return obj.at(key);
}

CPoint parse_complex(const Json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ParseError(path + ": complex values are [re, im] number pairs");
    return {v[0].get<double>(), v[1].get<double>()};
}

double parse_number(const Json& v, const std::string& path) {
    if (!v.is_number()) throw ParseError(path + ": expected a number");
    return v.get<double>();
}

int parse_int(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ParseError(path + ": expected an integer");
    return v.get<int>();
}

std::vector<ClosedDisk> parse_excluded(const Json& arr, const std::string& path) {
    std::vector<ClosedDisk> out;
    if (!arr.is_array()) throw ParseError(path + ": expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        check_keys(arr[i], {"center", "radius"}, p);
        out.push_back({parse_complex(require(arr[i], "center", p), p + ".center"),
                       parse_number(require(arr[i], "radius", p), p + ".radius")});
    }
    return out;
}

DomainSpec parse_domain(const Json& d) {
    check_keys(d, {"base", "center", "radius", "excluded", "class", "truncation_note"},
               "domain");
    const std::string base = require(d, "base", "domain").get<std::string>();
    std::vector<ClosedDisk> excluded;
    if (d.contains("excluded")) excluded = parse_excluded(d["excluded"], "domain.excluded");
    std::optional<ConnectivityClass> cls;
    if (d.contains("class")) {
        const std::string c = d["class"].get<std::string>();
        if (c == "simply_connected") cls = ConnectivityClass::SimplyConnected;
        else if (c == "finitely_connected") cls = ConnectivityClass::FinitelyConnectedNotSimply;
        else if (c == "infinitely_connected") cls = ConnectivityClass::InfinitelyConnected;
        else throw ParseError("domain.class: unknown value \"" + c + "\"");
    }
    std::string note = d.value("truncation_note", std::string{});
    try {
        if (base == "plane") return DomainSpec::plane_minus(std::move(excluded), cls, note);
        if (base == "disk") {
            const CPoint c = d.contains("center")
                                 ? parse_complex(d["center"], "domain.center")
                                 : CPoint{};
            const double r = d.contains("radius")
                                 ? parse_number(d["radius"], "domain.radius")
                                 : 1.0;
            return DomainSpec::disk(c, r, std::move(excluded), cls, note);
        }
    } catch (const DomainError& e) {
        throw ValidationError("domain", e.what());
    }
    throw ParseError("domain.base: expected \"disk\" or \"plane\"");
}

MapExpr parse_map(const Json& m, const std::string& path) {
    const std::string type = require(m, "type", path).get<std::string>();
    try {
        if (type == "mobius") {
            check_keys(m, {"type", "a", "b", "c", "d"}, path);
            return MapExpr::mobius(parse_complex(require(m, "a", path), path + ".a"),
                                   parse_complex(require(m, "b", path), path + ".b"),
                                   parse_complex(require(m, "c", path), path + ".c"),
                                   parse_complex(require(m, "d", path), path + ".d"));
        }
        if (type == "affine") {
            check_keys(m, {"type", "a", "b"}, path);
            return MapExpr::affine(parse_complex(require(m, "a", path), path + ".a"),
                                   parse_complex(require(m, "b", path), path + ".b"));
        }
        if (type == "polynomial") {
            check_keys(m, {"type", "coeffs"}, path);
            const Json& cs = require(m, "coeffs", path);
            if (!cs.is_array()) throw ParseError(path + ".coeffs: expected an array");
            std::vector<CPoint> coeffs;
            for (std::size_t i = 0; i < cs.size(); ++i)
                coeffs.push_back(
                    parse_complex(cs[i], path + ".coeffs[" + std::to_string(i) + "]"));
            return MapExpr::polynomial(std::move(coeffs));
        }
        if (type == "composite") {
            check_keys(m, {"type", "parts"}, path);
            const Json& ps = require(m, "parts", path);
            if (!ps.is_array()) throw ParseError(path + ".parts: expected an array");
            std::vector<MapExpr> parts;
            for (std::size_t i = 0; i < ps.size(); ++i)
                parts.push_back(parse_map(ps[i], path + ".parts[" + std::to_string(i) + "]"));
            return MapExpr::composite(std::move(parts));
        }
    } catch (const InvalidMap& e) {
        throw ValidationError(path, e.what());
    }
    throw ParseError(path + ".type: unknown map type \"" + type + "\"");
}

FamilyKind parse_family(const Json& f) {
    check_keys(f, {"kind", "parameter"}, "family");
    const std::string kind = require(f, "kind", "family").get<std::string>();
    try {
        if (kind == "infinite") return FamilyKind::infinite();
        const int p = parse_int(require(f, "parameter", "family"), "family.parameter");
        if (kind == "cofinite") return FamilyKind::cofinite(p);
        if (kind == "syndetic") return FamilyKind::syndetic(p);
        if (kind == "thick") return FamilyKind::thick(p);
    } catch (const FamilyError& e) {
        throw ValidationError("family", e.what());
    }
    throw ParseError("family.kind: unknown value \"" + kind + "\"");
}

CompactRegion parse_compact(const Json& c, const DomainSpec& d, const std::string& path);

std::vector<CompactRegion> parse_compact_list(const Json& c, const DomainSpec& d,
                                              const std::string& path) {
    const std::string type = require(c, "type", path).get<std::string>();
    if (type == "exhaustion") {
        check_keys(c, {"type", "depth", "around"}, path);
        const int depth = parse_int(require(c, "depth", path), path + ".depth");
        if (depth < 1) throw ValidationError(path + ".depth", "must be positive");
        const CompactRegion base =
            parse_compact(require(c, "around", path), d, path + ".around");
        std::vector<CompactRegion> out;
        for (int l = 1; l <= depth; ++l) out.push_back(exhaustion(d, l, base));
        return out;
    }
    return {parse_compact(c, d, path)};
}

CompactRegion parse_compact(const Json& c, const DomainSpec& d, const std::string& path) {
    const std::string type = require(c, "type", path).get<std::string>();
    try {
        if (type == "disk") {
            check_keys(c, {"type", "center", "radius"}, path);
            return CompactRegion::disk(
                parse_complex(require(c, "center", path), path + ".center"),
                parse_number(require(c, "radius", path), path + ".radius"));
        }
        if (type == "annulus") {
            check_keys(c, {"type", "center", "inner", "outer"}, path);
            return CompactRegion::annulus(
                parse_complex(require(c, "center", path), path + ".center"),
                parse_number(require(c, "inner", path), path + ".inner"),
                parse_number(require(c, "outer", path), path + ".outer"));
        }
        if (type == "face") {
            check_keys(c, {"type", "center", "radius", "holes"}, path);
            Face f{ClosedPolyline::circle(
                       parse_complex(require(c, "center", path), path + ".center"),
                       parse_number(require(c, "radius", path), path + ".radius")),
                   {}};
            if (c.contains("holes"))
                for (const auto& hd : parse_excluded(c["holes"], path + ".holes"))
                    f.holes.push_back(ClosedPolyline::circle(hd.center, hd.radius));
            return CompactRegion({std::move(f)});
        }
        if (type == "enlarge") {
            check_keys(c, {"type", "of", "min_holes"}, path);
            const int mh = c.contains("min_holes")
                               ? parse_int(c["min_holes"], path + ".min_holes")
                               : 2;
            return enlarge_to_omega_convex(
                parse_compact(require(c, "of", path), d, path + ".of"), d, mh);
        }
    } catch (const GeometryError& e) {
        throw ValidationError(path, e.what());
    } catch (const DomainError& e) {
        throw ValidationError(path, e.what());
    }
    throw ParseError(path + ".type: unknown compact type \"" + type + "\"");
}

}  // namespace

ScenarioConfig parse_config(const Json& doc) {
    check_keys(doc,
               {"schema_version", "domain", "maps", "family", "compacts", "horizon",
                "tolerances", "outputs", "seed", "witness"},
               "config");
    if (parse_int(require(doc, "schema_version", "config"), "schema_version") != 1)
        throw ValidationError("schema_version", "unsupported schema version");

    ScenarioConfig c;
    c.domain = parse_domain(require(doc, "domain", "config"));

    const Json& maps = require(doc, "maps", "config");
    if (!maps.is_array() || maps.empty()) throw ParseError("maps: expected a nonempty array");
    for (std::size_t i = 0; i < maps.size(); ++i)
        c.maps.push_back(parse_map(maps[i], "maps[" + std::to_string(i) + "]"));

    c.family = parse_family(require(doc, "family", "config"));

    const Json& compacts = require(doc, "compacts", "config");
    if (!compacts.is_array() || compacts.empty())
        throw ParseError("compacts: expected a nonempty array");
    for (std::size_t i = 0; i < compacts.size(); ++i)
        for (auto& K :
             parse_compact_list(compacts[i], c.domain, "compacts[" + std::to_string(i) + "]"))
            c.compacts.push_back(std::move(K));

    c.horizon = parse_int(require(doc, "horizon", "config"), "horizon");
    if (c.horizon < 10) throw ValidationError("horizon", "must be at least 10");

    if (doc.contains("tolerances")) {
        const Json& t = doc["tolerances"];
        check_keys(t, {"incidence", "separation", "eps_witness"}, "tolerances");
        if (t.contains("incidence"))
            c.tolerances.incidence = parse_number(t["incidence"], "tolerances.incidence");
        if (t.contains("separation"))
            c.tolerances.separation = parse_number(t["separation"], "tolerances.separation");
        if (t.contains("eps_witness"))
            c.tolerances.eps_witness = parse_number(t["eps_witness"], "tolerances.eps_witness");
        if (c.tolerances.incidence < 0 || c.tolerances.separation < 0 ||
            c.tolerances.eps_witness <= 0)
            throw ValidationError("tolerances", "must be nonnegative (eps_witness positive)");
    }
    if (doc.contains("outputs")) {
        const Json& o = doc["outputs"];
        check_keys(o, {"report", "svg"}, "outputs");
        c.outputs.report = o.value("report", std::string{});
        c.outputs.svg = o.value("svg", std::string{});
    }
    if (doc.contains("seed")) c.seed = require(doc, "seed", "config").get<std::uint64_t>();
    if (doc.contains("witness")) {
        const Json& w = doc["witness"];
        check_keys(w, {"targets", "max_degree"}, "witness");
        WitnessConfig wc;
        const Json& ts = require(w, "targets", "witness");
        if (!ts.is_array() || ts.size() != c.maps.size() + 1)
            throw ValidationError("witness.targets", "need one constant per map plus one for K");
        for (std::size_t i = 0; i < ts.size(); ++i)
            wc.targets.push_back(
                parse_complex(ts[i], "witness.targets[" + std::to_string(i) + "]"));
        if (w.contains("max_degree"))
            wc.max_degree = parse_int(w["max_degree"], "witness.max_degree");
        if (wc.max_degree < 1) throw ValidationError("witness.max_degree", "must be positive");
        c.witness = std::move(wc);
    }
    c.echo = doc;
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

}  // namespace holo
