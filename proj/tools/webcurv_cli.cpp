#include <webcurv/webcurv.h>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

// a computation error from the library: exit 1
struct Failure {
    std::string message;
};
// bad invocation that CLI11 cannot see (missing input, unreadable file): exit 2
struct Usage {
    std::string message;
};

void check(wc_status s) {
    if (s != WC_OK) throw Failure{std::string(wc_status_name(s)) + ": " + wc_last_error()};
}

struct Text {
    char* p = nullptr;
    ~Text() { wc_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

using Web = std::unique_ptr<wc_web, decltype(&wc_web_free)>;
using Fol = std::unique_ptr<wc_foliation, decltype(&wc_foliation_free)>;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Usage{"cannot read '" + path + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_out(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw Usage{"cannot write '" + out + "'"};
    f << text;
    if (!f) throw Failure{"write to '" + out + "' failed"};
}

struct Input {
    std::string web, poly, field, catalog, ring;
    bool dual = false;

    const char* ring_arg() const { return ring.empty() ? nullptr : ring.c_str(); }

    Web load_web() const {
        wc_web* w = nullptr;
        if (!web.empty()) {
            check(wc_web_parse(read_file(web).c_str(), ring_arg(), &w));
        } else if (!poly.empty()) {
            check(wc_web_from_poly(poly.c_str(), ring_arg(), &w));
        } else if (!catalog.empty()) {
            Fol f = load_foliation();
            check(wc_foliation_to_web(f.get(), &w));
        } else {
            throw Usage{"give one of --web, --poly or --catalog"};
        }
        Web out(w, wc_web_free);
        if (dual) {
            wc_web* l = nullptr;
            check(wc_web_legendre(out.get(), -1, &l));
            out.reset(l);
        }
        return out;
    }

    Fol load_foliation() const {
        wc_foliation* f = nullptr;
        if (!web.empty()) {
            check(wc_foliation_parse(read_file(web).c_str(), ring_arg(), &f));
        } else if (!field.empty()) {
            auto comma = field.find(',');
            if (comma == std::string::npos) throw Usage{"--field expects 'A, B'"};
            check(wc_foliation_from_field(field.substr(0, comma).c_str(), field.substr(comma + 1).c_str(), ring_arg(), &f));
        } else if (!catalog.empty()) {
            check(wc_foliation_from_catalog(catalog.c_str(), &f));
        } else {
            throw Usage{"give one of --web, --field or --catalog"};
        }
        return Fol(f, wc_foliation_free);
    }
};

void web_inputs(CLI::App* c, Input& in) {
    c->add_option("--web", in.web, "web definition file");
    c->add_option("--poly", in.poly, "F(x, y, p) inline");
    c->add_option("--catalog", in.catalog, "catalog foliation, as a 1-web");
    c->add_option("--ring", in.ring, "rational | quadext:<D> | complex");
    c->add_flag("--dual", in.dual, "apply the Legendre transform first");
}

void foliation_inputs(CLI::App* c, Input& in) {
    c->add_option("--web", in.web, "web definition file (vectorfield, or F of a 1-web)");
    c->add_option("--field", in.field, "vector field 'A, B' in x, y");
    c->add_option("--catalog", in.catalog, "catalog name (F2..F6, H4, H5, H7, Z1, pencil4:<t>)");
    c->add_option("--ring", in.ring, "rational | quadext:<D> | complex");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"webcurv: polynomial webs on the projective plane"};
    app.require_subcommand(1);
    Input in;
    std::string out;
    int samples = -1, chart = -1, grid = 200;
    std::uint64_t seed = 1;
    double threshold = 1e-6;
    bool reduced = false;
    int exit_code = 0;

    auto with_out = [&](CLI::App* c) {
        c->add_option("--out", out, "output path (default stdout)");
        return c;
    };

    auto* legendre = with_out(app.add_subcommand("legendre", "Legendre transform; writes a web definition file"));
    web_inputs(legendre, in);
    legendre->add_option("--chart", chart, "read the projective transform in chart 0, 1 or 2")->check(CLI::Range(0, 2));
    legendre->callback([&] {
        Web w = in.load_web();
        wc_web* l = nullptr;
        check(wc_web_legendre(w.get(), chart, &l));
        Web lw(l, wc_web_free);
        Text t;
        check(wc_web_document(lw.get(), &t.p));
        write_out(out, t.str());
    });

    auto* disc = with_out(app.add_subcommand("discriminant", "discriminant of a web"));
    web_inputs(disc, in);
    disc->add_flag("--reduced", reduced, "squarefree part");
    disc->add_option("--chart", chart, "work in chart 0, 1 or 2 of the projective closure")->check(CLI::Range(0, 2));
    disc->callback([&] {
        Web w = in.load_web();
        if (chart >= 0) {
            wc_web* c = nullptr;
            check(wc_web_chart(w.get(), chart, &c));
            w.reset(c);
        }
        Text t;
        check(wc_web_discriminant(w.get(), reduced, &t.p));
        write_out(out, t.str());
    });

    using FolReport = wc_status (*)(const wc_foliation*, char**);
    auto foliation_command = [&](const char* name, const char* help, FolReport fn) {
        auto* c = with_out(app.add_subcommand(name, help));
        foliation_inputs(c, in);
        c->callback([&, fn] {
            Fol f = in.load_foliation();
            Text t;
            check(fn(f.get(), &t.p));
            write_out(out, t.str());
        });
    };
    foliation_command("inflection", "inflection divisor", wc_foliation_inflection);
    foliation_command("lines", "invariant lines", wc_foliation_lines);
    foliation_command("convexity", "convexity report", wc_foliation_convexity);
    foliation_command("singularities", "singular points with their classification", wc_foliation_singularities);
    foliation_command("census", "radial singularities by order", wc_foliation_census);

    auto* flat = app.add_subcommand("flatness", "sampled Blaschke curvature flatness check");
    web_inputs(flat, in);
    flat->add_option("--out,--report", out, "report path (default stdout)");
    flat->add_option("--samples", samples, "admissible samples (default 200)")->check(CLI::PositiveNumber);
    flat->add_option("--seed", seed, "sampling seed");
    flat->add_option("--threshold", threshold, "flatness threshold relative to the scale")->check(CLI::PositiveNumber);
    flat->callback([&] {
        Web w = in.load_web();
        Text t;
        check(wc_web_flatness(w.get(), samples > 0 ? samples : 200, seed, threshold, &t.p));
        write_out(out, t.str());
    });

    auto* delta = with_out(app.add_subcommand("delta-report", "discriminant components against the local 2-web"));
    web_inputs(delta, in);
    delta->add_option("--samples", samples, "points per component (default 10)")->check(CLI::PositiveNumber);
    delta->add_option("--seed", seed, "sampling seed");
    delta->callback([&] {
        Web w = in.load_web();
        Text t;
        check(wc_web_delta_report(w.get(), samples > 0 ? samples : 10, seed, &t.p));
        write_out(out, t.str());
    });

    std::string action, name;
    auto* cat = with_out(app.add_subcommand("catalog", "list the catalog, or emit one entry as a web definition file"));
    cat->add_option("action", action, "list | emit")->required()->check(CLI::IsMember({"list", "emit"}));
    cat->add_option("name", name, "entry to emit");
    cat->add_flag("--dual", in.dual, "emit the Legendre transform (a web) instead of the foliation");
    cat->callback([&] {
        Text t;
        if (action == "list") {
            check(wc_catalog_list(&t.p));
        } else {
            if (name.empty()) throw Usage{"catalog emit needs a name"};
            wc_foliation* f = nullptr;
            check(wc_foliation_from_catalog(name.c_str(), &f));
            Fol fol(f, wc_foliation_free);
            if (in.dual) {
                wc_web* w = nullptr;
                check(wc_foliation_to_web(fol.get(), &w));
                Web web(w, wc_web_free);
                wc_web* l = nullptr;
                check(wc_web_legendre(web.get(), -1, &l));
                Web lw(l, wc_web_free);
                check(wc_web_document(lw.get(), &t.p));
            } else {
                check(wc_foliation_document(fol.get(), &t.p));
            }
        }
        write_out(out, t.str());
    });

    auto* table = with_out(app.add_subcommand("table1", "radial census of the catalog against Table 1"));
    table->callback([&] {
        Text t;
        int mismatches = 0;
        check(wc_table1(&t.p, &mismatches));
        write_out(out, t.str());
        if (mismatches) exit_code = 3;
    });

    std::string rpoly;
    std::vector<double> window{-2, 2, -2, 2};
    auto* render = with_out(app.add_subcommand("render", "SVG of the real zero set of a polynomial in x, y"));
    render->add_option("--poly", rpoly, "polynomial in x, y")->required();
    render->add_option("--window", window, "xmin xmax ymin ymax")->expected(4);
    render->add_option("--grid", grid, "cells per side")->check(CLI::Range(2, 2000));
    render->callback([&] {
        Text t;
        check(wc_render_svg(rpoly.c_str(), window[0], window[1], window[2], window[3], grid, &t.p));
        write_out(out, t.str());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Usage& u) {
        std::cerr << "usage error: " << u.message << "\n";
        return 2;
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return 1;
    }
    return exit_code;
}
