#include "webcurv/webcurv.h"

#include "catalog.hpp"
#include "legendre.hpp"
#include "reports.hpp"

#include <cstring>

using namespace webcurv;

struct wc_web {
    AffineWeb w;
};

struct wc_foliation {
    Foliation f;
    std::string name;
};

namespace {

thread_local std::string last_error;

wc_status code_of(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgument: return WC_ERR_INVALID_ARGUMENT;
        case ErrorCode::Parse: return WC_ERR_PARSE;
        case ErrorCode::Domain: return WC_ERR_DOMAIN;
        case ErrorCode::Degenerate: return WC_ERR_DEGENERATE;
        case ErrorCode::Numeric: return WC_ERR_NUMERIC;
        case ErrorCode::Limit: return WC_ERR_LIMIT;
    }
    return WC_ERR_INTERNAL;
}

template <class Fn>
wc_status guard(Fn&& fn) {
    try {
        last_error.clear();
        fn();
        return WC_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return code_of(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return WC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return WC_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) throw Error(ErrorCode::InvalidArgument, std::string("null argument: ") + what);
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::optional<Ring> ring_arg(const char* r) {
    if (!r) return std::nullopt;
    return Ring::parse(r);
}

void emit(char** out, const json& j) {
    need(out, "out");
    *out = dup(j.dump(2) + "\n");
}

}  // namespace

extern "C" {

const char* wc_last_error(void) { return last_error.c_str(); }

const char* wc_status_name(wc_status s) {
    switch (s) {
        case WC_OK: return "ok";
        case WC_ERR_INVALID_ARGUMENT: return "invalid argument";
        case WC_ERR_PARSE: return "parse error";
        case WC_ERR_DOMAIN: return "domain error";
        case WC_ERR_DEGENERATE: return "degenerate input";
        case WC_ERR_NUMERIC: return "numeric failure";
        case WC_ERR_LIMIT: return "limit exceeded";
        case WC_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* wc_version(void) { return "0.1.0"; }

void wc_string_free(char* s) { std::free(s); }

wc_status wc_web_parse(const char* document, const char* ring, wc_web** out) {
    return guard([&] {
        need(document, "document");
        need(out, "out");
        *out = new wc_web{parse_web_document(document, ring_arg(ring)).web};
    });
}

wc_status wc_web_from_poly(const char* F, const char* ring, wc_web** out) {
    return guard([&] {
        need(F, "F");
        need(out, "out");
        Ring r = ring_arg(ring).value_or(Ring::rational());
        *out = new wc_web{AffineWeb::make(parse_poly(F, affine_vars(), r))};
    });
}

void wc_web_free(wc_web* w) { delete w; }

wc_status wc_web_degrees(const wc_web* w, int* k, int* d) {
    return guard([&] {
        need(w, "web");
        if (k) *k = w->w.k();
        if (d) *d = w->w.d();
    });
}

wc_status wc_web_document(const wc_web* w, char** out) {
    return guard([&] {
        need(w, "web");
        need(out, "out");
        *out = dup(web_document(w->w));
    });
}

wc_status wc_web_legendre(const wc_web* w, int chart, wc_web** out) {
    return guard([&] {
        need(w, "web");
        need(out, "out");
        if (chart < 0) {
            *out = new wc_web{legendre_affine(w->w)};
        } else {
            if (chart > 2) throw Error(ErrorCode::InvalidArgument, "chart must be 0, 1 or 2");
            *out = new wc_web{dehomogenize(legendre_projective(homogenize(w->w)), chart)};
        }
    });
}

wc_status wc_web_chart(const wc_web* w, int chart, wc_web** out) {
    return guard([&] {
        need(w, "web");
        need(out, "out");
        if (chart < 0 || chart > 2) throw Error(ErrorCode::InvalidArgument, "chart must be 0, 1 or 2");
        *out = new wc_web{dehomogenize(homogenize(w->w), chart)};
    });
}

wc_status wc_web_discriminant(const wc_web* w, int reduced, char** out) {
    return guard([&] {
        need(w, "web");
        emit(out, report_discriminant(w->w, reduced != 0));
    });
}

wc_status wc_web_curvature(const wc_web* w, double x, double y, double* re, double* im) {
    return guard([&] {
        need(w, "web");
        CurvatureSample s = curvature_at(w->w, x, y);
        if (!s.admissible) throw Error(ErrorCode::Domain, "inadmissible point: " + s.reason);
        if (re) *re = static_cast<double>(s.K->real());
        if (im) *im = static_cast<double>(s.K->imag());
    });
}

wc_status wc_web_flatness(const wc_web* w, int samples, uint64_t seed, double threshold, char** out) {
    return guard([&] {
        need(w, "web");
        emit(out, report_flatness(flatness_check(w->w, samples, seed, threshold)));
    });
}

wc_status wc_web_flatness_verdict(const wc_web* w, int samples, uint64_t seed, double threshold, int* flat) {
    return guard([&] {
        need(w, "web");
        need(flat, "flat");
        Verdict v = flatness_check(w->w, samples, seed, threshold).verdict;
        *flat = v == Verdict::Flat ? 1 : v == Verdict::NotFlat ? 0 : -1;
    });
}

wc_status wc_web_delta_report(const wc_web* w, int samples, uint64_t seed, char** out) {
    return guard([&] {
        need(w, "web");
        emit(out, report_delta(discriminant_component_report(w->w, samples, seed)));
    });
}

wc_status wc_foliation_parse(const char* document, const char* ring, wc_foliation** out) {
    return guard([&] {
        need(document, "document");
        need(out, "out");
        WebDocument doc = parse_web_document(document, ring_arg(ring));
        if (!doc.foliation) throw Error(ErrorCode::InvalidArgument, "document does not describe a foliation (k != 1)");
        *out = new wc_foliation{*doc.foliation, doc.name};
    });
}

wc_status wc_foliation_from_field(const char* A, const char* B, const char* ring, wc_foliation** out) {
    return guard([&] {
        need(A, "A");
        need(B, "B");
        need(out, "out");
        Ring r = ring_arg(ring).value_or(Ring::rational());
        *out = new wc_foliation{Foliation::affine(parse_poly(A, plane_vars(), r), parse_poly(B, plane_vars(), r)), ""};
    });
}

wc_status wc_foliation_from_catalog(const char* name, wc_foliation** out) {
    return guard([&] {
        need(name, "name");
        need(out, "out");
        *out = new wc_foliation{catalog_foliation(name), name};
    });
}

void wc_foliation_free(wc_foliation* f) { delete f; }

wc_status wc_foliation_degree(const wc_foliation* f, int* d) {
    return guard([&] {
        need(f, "foliation");
        need(d, "d");
        *d = f->f.degree();
    });
}

wc_status wc_foliation_document(const wc_foliation* f, char** out) {
    return guard([&] {
        need(f, "foliation");
        need(out, "out");
        *out = dup(foliation_document(f->f, f->name));
    });
}

wc_status wc_foliation_to_web(const wc_foliation* f, wc_web** out) {
    return guard([&] {
        need(f, "foliation");
        need(out, "out");
        *out = new wc_web{foliation_to_web(f->f)};
    });
}

#define WC_FOLIATION_REPORT(fn, report)                  \
    wc_status fn(const wc_foliation* f, char** out) {   \
        return guard([&] {                               \
            need(f, "foliation");                        \
            emit(out, report(f->f));                     \
        });                                              \
    }

WC_FOLIATION_REPORT(wc_foliation_inflection, report_inflection)
WC_FOLIATION_REPORT(wc_foliation_lines, report_lines)
WC_FOLIATION_REPORT(wc_foliation_convexity, report_convexity)
WC_FOLIATION_REPORT(wc_foliation_singularities, report_singularities)
WC_FOLIATION_REPORT(wc_foliation_census, report_census)

wc_status wc_catalog_list(char** out) {
    return guard([&] { emit(out, report_catalog()); });
}

wc_status wc_table1(char** out, int* mismatches) {
    return guard([&] {
        int m = 0;
        json j = report_table1(m);
        if (mismatches) *mismatches = m;
        emit(out, j);
    });
}

wc_status wc_render_svg(const char* poly, double xmin, double xmax, double ymin, double ymax, int grid, char** svg) {
    return guard([&] {
        need(poly, "poly");
        need(svg, "svg");
        RenderOptions o{xmin, xmax, ymin, ymax, grid > 0 ? grid : 200};
        *svg = dup(render_svg(parse_poly(poly, plane_vars(), Ring::rational()), o));
    });
}

}  // extern "C"
