#include <cmath>
#include <cstdio>
#include <string>

#include "holo/report.hpp"

namespace holo {

namespace {

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

void extend(double& lo_x, double& hi_x, double& lo_y, double& hi_y, const Json& pt) {
    const double x = pt[0].get<double>(), y = pt[1].get<double>();
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
}

std::string path_data(const Json& region) {
    std::string d;
    for (const auto& face : region["faces"]) {
        auto ring = [&](const Json& pts) {
            bool first = true;
            for (const auto& p : pts) {
                d += first ? "M " : "L ";
                d += num(p[0].get<double>()) + "," + num(-p[1].get<double>()) + " ";
                first = false;
            }
            d += "Z ";
        };
        ring(face["outer"]);
        for (const auto& h : face["holes"]) ring(h);
    }
    return d;
}

}  // namespace

void emit_svg(const Json& report, const std::string& path) {
    const Json& dom = report.at("domain");
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    if (dom["base"] == "disk") {
        const double cx = dom["center"][0].get<double>();
        const double cy = dom["center"][1].get<double>();
        const double r = dom["radius"].get<double>();
        lo_x = cx - r;
        hi_x = cx + r;
        lo_y = cy - r;
        hi_y = cy + r;
    }
    for (const auto& e : dom["excluded"]) {
        const double r = e["radius"].get<double>();
        extend(lo_x, hi_x, lo_y, hi_y,
               Json::array({e["center"][0].get<double>() - r, e["center"][1].get<double>() - r}));
        extend(lo_x, hi_x, lo_y, hi_y,
               Json::array({e["center"][0].get<double>() + r, e["center"][1].get<double>() + r}));
    }
    if (report.contains("figures")) {
        const Json& figs = report["figures"];
        for (const auto& face : figs["compact"]["faces"])
            for (const auto& p : face["outer"]) extend(lo_x, hi_x, lo_y, hi_y, p);
        for (const auto& im : figs["images"])
            for (const auto& face : im["region"]["faces"])
                for (const auto& p : face["outer"]) extend(lo_x, hi_x, lo_y, hi_y, p);
    }
    if (lo_x > hi_x) {
        lo_x = lo_y = -2;
        hi_x = hi_y = 2;
    }
    const double pad = 0.08 * std::max(hi_x - lo_x, hi_y - lo_y) + 1e-6;
    lo_x -= pad;
    lo_y -= pad;
    hi_x += pad;
    hi_y += pad;

    const double w = hi_x - lo_x, h = hi_y - lo_y;
    const double stroke = 0.004 * std::max(w, h);

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
         "height=\"800\" viewBox=\"" +
         num(lo_x) + " " + num(-hi_y) + " " + num(w) + " " + num(h) + "\">\n";
    s += "<rect x=\"" + num(lo_x) + "\" y=\"" + num(-hi_y) + "\" width=\"" + num(w) +
         "\" height=\"" + num(h) + "\" fill=\"white\"/>\n";

    // domain outline and excluded disks (y negated: SVG y axis points down)
    if (dom["base"] == "disk")
        s += "<circle cx=\"" + num(dom["center"][0].get<double>()) + "\" cy=\"" +
             num(-dom["center"][1].get<double>()) + "\" r=\"" + num(dom["radius"].get<double>()) +
             "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"" + num(stroke) +
             "\" stroke-dasharray=\"" + num(4 * stroke) + "\"/>\n";
    for (const auto& e : dom["excluded"])
        s += "<circle cx=\"" + num(e["center"][0].get<double>()) + "\" cy=\"" +
             num(-e["center"][1].get<double>()) + "\" r=\"" + num(e["radius"].get<double>()) +
             "\" fill=\"#dddddd\" stroke=\"#888888\" stroke-width=\"" + num(stroke / 2) +
             "\"/>\n";

    double legend_y = -hi_y + 3 * 0.035 * h;
    const double font = 0.03 * h;
    auto legend = [&](const std::string& color, const std::string& label) {
        s += "<text x=\"" + num(lo_x + 0.02 * w) + "\" y=\"" + num(legend_y) +
             "\" font-family=\"monospace\" font-size=\"" + num(font) + "\" fill=\"" + color +
             "\">" + label + "</text>\n";
        legend_y += 0.035 * h;
    };

    if (report.contains("figures")) {
        const Json& figs = report["figures"];
        s += "<path d=\"" + path_data(figs["compact"]) +
             "\" fill-rule=\"evenodd\" fill=\"#00000018\" stroke=\"#000000\" stroke-width=\"" +
             num(stroke) + "\"/>\n";
        legend("#000000", "K");
        for (const auto& im : figs["images"]) {
            const std::size_t mi = im["map"].get<std::size_t>();
            const char* color = kPalette[mi % 8];
            s += "<path d=\"" + path_data(im["region"]) +
                 "\" fill-rule=\"evenodd\" fill=\"none\" stroke=\"" + color +
                 "\" stroke-width=\"" + num(stroke) + "\"/>\n";
            legend(color, "map " + std::to_string(mi) + ", n = " +
                              std::to_string(im["n"].get<int>()));
        }
        if (figs.value("no_members", false)) legend("#555555", "no run-away indices");
    } else {
        legend("#555555", "domain outline only (" + report.value("status", std::string("?")) +
                              ")");
    }
    s += "</svg>\n";
    write_text_file(path, s);
}

}  // namespace holo
