#ifndef WEBCURV_H
#define WEBCURV_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define WC_API __declspec(dllexport)
#else
#define WC_API __attribute__((visibility("default")))
#endif

typedef enum wc_status {
    WC_OK = 0,
    WC_ERR_INVALID_ARGUMENT = 1,
    WC_ERR_PARSE = 2,
    WC_ERR_DOMAIN = 3,
    WC_ERR_DEGENERATE = 4,
    WC_ERR_NUMERIC = 5,
    WC_ERR_LIMIT = 6,
    WC_ERR_INTERNAL = 7
} wc_status;

/* A k-web F(x, y; p) = 0 and a foliation A d/dx + B d/dy. */
typedef struct wc_web wc_web;
typedef struct wc_foliation wc_foliation;

/* Message of the last failed call on this thread ("" if none). */
WC_API const char* wc_last_error(void);
WC_API const char* wc_status_name(wc_status s);
WC_API const char* wc_version(void);
/* Every char* handed out by this library is released with wc_string_free. */
WC_API void wc_string_free(char* s);

/* ring: "rational", "quadext:<D>" or "complex"; NULL means rational (or the document's own ring). */
WC_API wc_status wc_web_parse(const char* document, const char* ring, wc_web** out);
WC_API wc_status wc_web_from_poly(const char* F, const char* ring, wc_web** out);
WC_API void wc_web_free(wc_web* w);
WC_API wc_status wc_web_degrees(const wc_web* w, int* k, int* d);
WC_API wc_status wc_web_document(const wc_web* w, char** out);
/* chart < 0: affine Legendre transform; 0..2: projective transform read in that chart. */
WC_API wc_status wc_web_legendre(const wc_web* w, int chart, wc_web** out);
/* The web in the affine chart 0, 1 or 2 of its projective closure. */
WC_API wc_status wc_web_chart(const wc_web* w, int chart, wc_web** out);
WC_API wc_status wc_web_discriminant(const wc_web* w, int reduced, char** json);
WC_API wc_status wc_web_curvature(const wc_web* w, double x, double y, double* re, double* im);
WC_API wc_status wc_web_flatness(const wc_web* w, int samples, uint64_t seed, double threshold, char** json);
WC_API wc_status wc_web_flatness_verdict(const wc_web* w, int samples, uint64_t seed, double threshold, int* flat);
WC_API wc_status wc_web_delta_report(const wc_web* w, int samples, uint64_t seed, char** json);

/* A document with a vectorfield, or with F of a 1-web. */
WC_API wc_status wc_foliation_parse(const char* document, const char* ring, wc_foliation** out);
WC_API wc_status wc_foliation_from_field(const char* A, const char* B, const char* ring, wc_foliation** out);
WC_API wc_status wc_foliation_from_catalog(const char* name, wc_foliation** out);
WC_API void wc_foliation_free(wc_foliation* f);
WC_API wc_status wc_foliation_degree(const wc_foliation* f, int* d);
WC_API wc_status wc_foliation_document(const wc_foliation* f, char** out);
WC_API wc_status wc_foliation_to_web(const wc_foliation* f, wc_web** out);
WC_API wc_status wc_foliation_inflection(const wc_foliation* f, char** json);
WC_API wc_status wc_foliation_lines(const wc_foliation* f, char** json);
WC_API wc_status wc_foliation_convexity(const wc_foliation* f, char** json);
WC_API wc_status wc_foliation_singularities(const wc_foliation* f, char** json);
WC_API wc_status wc_foliation_census(const wc_foliation* f, char** json);

WC_API wc_status wc_catalog_list(char** json);
/* mismatches: rows whose radial count differs from Table 1. */
WC_API wc_status wc_table1(char** json, int* mismatches);
/* Zero set of a polynomial in x, y as SVG; grid <= 0 picks the default. */
WC_API wc_status wc_render_svg(const char* poly, double xmin, double xmax, double ymin, double ymax, int grid,
                               char** svg);

#ifdef __cplusplus
}
#endif

#endif
