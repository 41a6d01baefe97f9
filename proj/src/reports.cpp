#include "reports.hpp"

#include "catalog.hpp"
#include "legendre.hpp"

#include <cstdio>
#include <sstream>

namespace webcurv {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string_view::npos ? std::string() : std::string(s.substr(a, b - a + 1));
}

// split on commas outside parentheses
std::vector<std::string> split_top(std::string_view s) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == ',' && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

json cj(cplx z) { return json::array({static_cast<double>(z.real()), static_cast<double>(z.imag())}); }

json point_json(const ProjPoint& p) {
    json j;
    j["point"] = p.to_string();
    j["exact"] = p.exact.has_value();
    j["value"] = json::array({cj(p.value[0]), cj(p.value[1]), cj(p.value[2])});
    j["residual"] = static_cast<double>(p.residual);
    return j;
}

json line_json(const LinearForm& l) { return {{"form", l.to_string()}, {"exact", l.exact()}}; }

json header(const char* kind) { return {{"schema_version", kSchemaVersion}, {"kind", kind}}; }

json record_json(const SingularityRecord& r) {
    json j = point_json(r.location);
    j["class"] = to_string(r.linear_class);
    j["nu"] = r.nu;
    j["radial_order"] = r.radial_order ? json(*r.radial_order) : json(nullptr);
    return j;
}

}  // namespace

WebDocument parse_web_document(std::string_view text, std::optional<Ring> ring_override) {
    std::map<std::string, std::string> kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::string t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value' on line " + std::to_string(lineno), 0);
        std::string key = trim(std::string_view(t).substr(0, eq)), value = trim(std::string_view(t).substr(eq + 1));
        if (key != "name" && key != "ring" && key != "vars" && key != "F" && key != "vectorfield")
            throw ParseError("unknown key '" + key + "' on line " + std::to_string(lineno), 0);
        if (kv.count(key)) throw ParseError("duplicate key '" + key + "'", 0);
        kv[key] = value;
    }
    bool hasF = kv.count("F"), hasV = kv.count("vectorfield");
    if (hasF == hasV) throw ParseError("a web document needs exactly one of 'F' or 'vectorfield'", 0);
    Ring ring = ring_override ? *ring_override : (kv.count("ring") ? Ring::parse(kv["ring"]) : Ring::rational());
    std::vector<std::string> vars;
    if (kv.count("vars"))
        vars = split_top(kv["vars"]);
    else
        vars = hasF ? affine_vars() : plane_vars();
    WebDocument doc{kv.count("name") ? kv["name"] : "", AffineWeb{}, std::nullopt};
    if (hasF) {
        if (vars.size() != 3) throw ParseError("'F' needs three variables (x, y, p)", 0);
        doc.web = AffineWeb::make(parse_poly(kv["F"], vars, ring).rename(affine_vars()));
        if (doc.web.k() == 1) doc.foliation = web_to_foliation(doc.web);
    } else {
        if (vars.size() != 2) throw ParseError("'vectorfield' needs two variables (x, y)", 0);
        auto parts = split_top(kv["vectorfield"]);
        if (parts.size() != 2) throw ParseError("'vectorfield' needs two components A, B", 0);
        doc.foliation = Foliation::affine(parse_poly(parts[0], vars, ring).rename(plane_vars()),
                                          parse_poly(parts[1], vars, ring).rename(plane_vars()));
        doc.web = foliation_to_web(*doc.foliation);
    }
    return doc;
}

std::string web_document(const AffineWeb& w, const std::string& name) {
    std::string s;
    if (!name.empty()) s += "name = " + name + "\n";
    s += "ring = " + w.ring().name() + "\nvars = x, y, p\nF = " + w.F().to_string() + "\n";
    return s;
}

std::string foliation_document(const Foliation& f, const std::string& name) {
    std::string s;
    if (!name.empty()) s += "name = " + name + "\n";
    s += "ring = " + f.ring().name() + "\nvars = x, y\nvectorfield = " + f.A().to_string() + ", " + f.B().to_string() + "\n";
    return s;
}

Foliation web_to_foliation(const AffineWeb& w) {
    if (w.k() != 1) throw Error(ErrorCode::InvalidArgument, "a foliation needs a 1-web (k = 1)");
    auto c = w.coefficients();
    auto plane = [](const MultiPoly& p) { return p.substitute(2, Scalar::zero(p.ring())).embed(plane_vars()); };
    return Foliation::affine(plane(c.at(1)), -plane(c.at(0)));
}

json report_web(const AffineWeb& w) {
    json j = header("web");
    j["k"] = w.k();
    j["d"] = w.d();
    j["ring"] = w.ring().name();
    j["F"] = w.F().to_string();
    return j;
}

json report_discriminant(const AffineWeb& w, bool reduced) {
    json j = header("discriminant");
    MultiPoly D = discriminant(w, reduced);
    j["reduced"] = reduced;
    j["polynomial"] = D.to_string();
    j["degree"] = D.degree();
    MultiPoly P = projective_discriminant(w);
    j["projective_degree"] = P.degree();
    return j;
}

json report_inflection(const Foliation& f) {
    json j = header("inflection");
    MultiPoly I = inflection_divisor(f);
    j["foliation_degree"] = f.degree();
    j["polynomial"] = I.to_string();
    j["degree"] = I.degree();
    j["expected_degree"] = 3 * f.degree();
    return j;
}

json report_lines(const Foliation& f) {
    json j = header("lines");
    LineSearch s = find_invariant_lines(f);
    j["foliation_degree"] = f.degree();
    j["count"] = s.lines.size();
    j["max_count"] = 3 * f.degree();
    j["complete"] = s.complete;
    if (!s.note.empty()) j["note"] = s.note;
    j["lines"] = json::array();
    for (const auto& l : s.lines) j["lines"].push_back(line_json(l));
    return j;
}

json report_convexity(const Foliation& f) {
    json j = header("convexity");
    ConvexityReport r = convexity_report(f);
    j["convex"] = r.convex;
    j["reduced"] = r.reduced;
    j["complete"] = r.complete;
    j["inflection_degree"] = r.inflection_degree;
    j["cofactor"] = r.cofactor.to_string();
    j["factors"] = json::array();
    for (const auto& [l, m] : r.factors) {
        json e = line_json(l);
        e["multiplicity"] = m;
        j["factors"].push_back(e);
    }
    return j;
}

json report_singularities(const Foliation& f) {
    json j = header("singularities");
    j["points"] = json::array();
    for (const auto& p : singular_points(f)) j["points"].push_back(record_json(classify_singularity(f, p)));
    j["count"] = j["points"].size();
    return j;
}

json report_census(const Foliation& f) {
    json j = header("census");
    RadialCensus c = radial_census(f);
    j["foliation_degree"] = f.degree();
    json counts = json::object();
    for (auto [o, n] : c.counts) counts[std::to_string(o)] = n;
    j["counts"] = counts;
    json nus = json::object();
    for (const auto& r : c.records)
        if (r.radial_order) nus[std::to_string(r.nu)] = nus.value(std::to_string(r.nu), 0) + 1;
    j["nu_counts"] = nus;
    j["total"] = c.total;
    j["weighted"] = c.weighted;
    j["bound"] = c.bound;
    j["bound_ok"] = c.bound_ok;
    j["singular_points"] = c.records.size();
    j["radial"] = json::array();
    for (const auto& r : c.records)
        if (r.radial_order) j["radial"].push_back(record_json(r));
    return j;
}

json report_flatness(const FlatnessVerdict& v) {
    json j = header("flatness");
    j["verdict"] = to_string(v.verdict);
    j["samples"] = v.samples;
    j["admissible"] = v.admissible;
    j["rejected"] = v.rejected;
    j["max_abs_K"] = static_cast<double>(v.max_abs_K);
    j["median_abs_K"] = static_cast<double>(v.median_abs_K);
    j["scale"] = static_cast<double>(v.scale);
    j["threshold"] = static_cast<double>(v.threshold);
    j["above_margin"] = v.above_margin;
    j["records"] = json::array();
    for (const auto& s : v.records) {
        json r;
        r["x"] = cj(s.x);
        r["y"] = cj(s.y);
        r["admissible"] = s.admissible;
        r["reason"] = s.reason;
        r["K"] = s.K ? cj(*s.K) : json(nullptr);
        r["contributions"] = json::array();
        for (auto c : s.contributions) r["contributions"].push_back(cj(c));
        r["separation"] = static_cast<double>(s.separation);
        r["conditioning"] = static_cast<double>(s.conditioning);
        r["max_abs_slope"] = static_cast<double>(s.max_abs_slope);
        r["rotated"] = s.rotated;
        r["K_fd"] = s.K_fd ? cj(*s.K_fd) : json(nullptr);
        r["cross_check_flag"] = s.cross_check_flag;
        j["records"].push_back(r);
    }
    return j;
}

json report_delta(const DeltaReport& r) {
    json j = header("delta-report");
    j["discriminant"] = r.discriminant.to_string();
    j["components"] = json::array();
    for (const auto& c : r.components) {
        json e;
        e["component"] = c.component;
        e["linear"] = c.linear;
        e["multiplicity"] = c.multiplicity;
        e["samples"] = c.samples;
        e["degenerate"] = c.degenerate;
        e["web2"] = {{"invariant", c.web2_invariant}, {"margin", static_cast<double>(c.web2_margin)}};
        e["barycenter"] = {{"invariant", c.barycenter_invariant}, {"margin", static_cast<double>(c.barycenter_margin)}};
        j["components"].push_back(e);
    }
    return j;
}

json report_catalog() {
    json j = header("catalog");
    j["entries"] = json::array();
    for (const auto& e : catalog_entries()) {
        json r{{"name", e.name}, {"description", e.description}, {"degree", e.degree}};
        r["table1_radial"] = e.table1_radial ? json(*e.table1_radial) : json(nullptr);
        r["invariant_lines"] = e.invariant_lines ? json(*e.invariant_lines) : json(nullptr);
        j["entries"].push_back(r);
    }
    return j;
}

json report_table1(int& mismatches) {
    json j = header("table1");
    mismatches = 0;
    j["rows"] = json::array();
    for (const auto& e : catalog_entries()) {
        if (!e.table1_radial) continue;
        RadialCensus c = radial_census(catalog_foliation(e.name));
        bool ok = c.total == *e.table1_radial;
        if (!ok) ++mismatches;
        json counts = json::object();
        for (auto [o, n] : c.counts) counts[std::to_string(o)] = n;
        j["rows"].push_back({{"name", e.name},
                             {"degree", e.degree},
                             {"expected_r", *e.table1_radial},
                             {"r", c.total},
                             {"counts", counts},
                             {"weighted", c.weighted},
                             {"bound", c.bound},
                             {"match", ok}});
    }
    j["mismatches"] = mismatches;
    return j;
}

std::string render_svg(const MultiPoly& P, const RenderOptions& o) {
    if (P.nvars() != 2) throw Error(ErrorCode::InvalidArgument, "render needs a polynomial in two variables");
    if (o.grid < 2 || o.grid > 2000 || !(o.xmax > o.xmin) || !(o.ymax > o.ymin))
        throw Error(ErrorCode::InvalidArgument, "render: bad window or grid");
    const int n = o.grid;
    const real size = 800;
    auto X = [&](real i) { return o.xmin + (o.xmax - o.xmin) * i / n; };
    auto Y = [&](real j) { return o.ymin + (o.ymax - o.ymin) * j / n; };
    std::vector<real> v(static_cast<std::size_t>((n + 1) * (n + 1)));
    auto at = [&](int i, int j) -> real& { return v[static_cast<std::size_t>(j * (n + 1) + i)]; };
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            std::array<cplx, 2> pt{X(i), Y(j)};
            at(i, j) = P.eval(std::span<const cplx>(pt)).real();
        }
    // screen coordinates, y pointing down
    auto sx = [&](real i) { return size * i / n; };
    auto sy = [&](real j) { return size * (1 - j / n); };
    std::string path;
    char buf[96];
    auto seg = [&](real i0, real j0, real i1, real j1) {
        std::snprintf(buf, sizeof buf, "M%.2f %.2fL%.2f %.2f", static_cast<double>(sx(i0)), static_cast<double>(sy(j0)),
                      static_cast<double>(sx(i1)), static_cast<double>(sy(j1)));
        path += buf;
    };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            real c[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
            const real ci[4] = {real(i), real(i + 1), real(i + 1), real(i)}, cjv[4] = {real(j), real(j), real(j + 1), real(j + 1)};
            // crossing on edge e (corner e to e+1)
            std::vector<std::pair<real, real>> cross;
            for (int e = 0; e < 4; ++e) {
                real a = c[e], b = c[(e + 1) % 4];
                if ((a < 0) == (b < 0)) continue;
                real t = a / (a - b);
                cross.emplace_back(ci[e] + t * (ci[(e + 1) % 4] - ci[e]), cjv[e] + t * (cjv[(e + 1) % 4] - cjv[e]));
            }
            if (cross.size() == 2) {
                seg(cross[0].first, cross[0].second, cross[1].first, cross[1].second);
            } else if (cross.size() == 4) {
                // saddle: pair the crossings according to the sign at the center
                real mid = (c[0] + c[1] + c[2] + c[3]) / 4;
                if ((mid < 0) == (c[0] < 0)) {
                    seg(cross[0].first, cross[0].second, cross[1].first, cross[1].second);
                    seg(cross[2].first, cross[2].second, cross[3].first, cross[3].second);
                } else {
                    seg(cross[0].first, cross[0].second, cross[3].first, cross[3].second);
                    seg(cross[1].first, cross[1].second, cross[2].first, cross[2].second);
                }
            }
        }
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    s += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    auto axis = [&](bool vertical) {
        real lo = vertical ? o.xmin : o.ymin, hi = vertical ? o.xmax : o.ymax;
        if (lo > 0 || hi < 0) return;
        real pos = -lo / (hi - lo) * n;
        if (vertical)
            std::snprintf(buf, sizeof buf, "<path d=\"M%.2f 0V800\" stroke=\"#ccc\"/>\n", static_cast<double>(sx(pos)));
        else
            std::snprintf(buf, sizeof buf, "<path d=\"M0 %.2fH800\" stroke=\"#ccc\"/>\n", static_cast<double>(sy(pos)));
        s += buf;
    };
    axis(true);
    axis(false);
    s += "<path d=\"" + path + "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n</svg>\n";
    return s;
}

}  // namespace webcurv
