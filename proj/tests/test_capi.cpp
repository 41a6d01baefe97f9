#include <webcurv/webcurv.h>

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <string>

using nlohmann::json;

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    wc_string_free(s);
    return out;
}

json take_json(char* s) { return json::parse(take(s)); }

}  // namespace

TEST_CASE("status names and version") {
    CHECK(std::string(wc_status_name(WC_OK)) == "ok");
    CHECK(std::string(wc_status_name(WC_ERR_PARSE)) == "parse error");
    CHECK(std::string(wc_version()).size() > 0);
}

TEST_CASE("web lifecycle and round trip") {
    wc_web* w = nullptr;
    REQUIRE(wc_web_from_poly("p^3 - x*p + y", nullptr, &w) == WC_OK);
    int k = 0, d = -1;
    REQUIRE(wc_web_degrees(w, &k, &d) == WC_OK);
    CHECK(k == 3);
    CHECK(d == 0);
    wc_web* curve = nullptr;
    CHECK(wc_web_legendre(w, -1, &curve) == WC_ERR_DOMAIN);
    wc_web_free(w);
    REQUIRE(wc_web_from_poly("x*p^3 - y*p + 1", nullptr, &w) == WC_OK);
    REQUIRE(wc_web_degrees(w, &k, &d) == WC_OK);
    CHECK(k == 3);
    CHECK(d > 0);

    char* doc = nullptr;
    REQUIRE(wc_web_document(w, &doc) == WC_OK);
    std::string text = take(doc);
    wc_web* back = nullptr;
    REQUIRE(wc_web_parse(text.c_str(), nullptr, &back) == WC_OK);
    char* doc2 = nullptr;
    REQUIRE(wc_web_document(back, &doc2) == WC_OK);
    CHECK(take(doc2) == text);

    wc_web* l = nullptr;
    wc_web* ll = nullptr;
    REQUIRE(wc_web_legendre(w, -1, &l) == WC_OK);
    REQUIRE(wc_web_legendre(l, -1, &ll) == WC_OK);
    // applying the transform twice gives the reflection F(-x, y, -p)
    wc_web* reflected = nullptr;
    REQUIRE(wc_web_from_poly("x*p^3 + y*p + 1", nullptr, &reflected) == WC_OK);
    char* a = nullptr;
    char* b = nullptr;
    REQUIRE(wc_web_discriminant(reflected, 1, &a) == WC_OK);
    REQUIRE(wc_web_discriminant(ll, 1, &b) == WC_OK);
    CHECK(take_json(a)["polynomial"] == take_json(b)["polynomial"]);

    wc_web_free(reflected);
    wc_web_free(ll);
    wc_web_free(l);
    wc_web_free(back);
    wc_web_free(w);
    wc_web_free(nullptr);
}

TEST_CASE("errors are reported by status and message") {
    wc_web* w = nullptr;
    CHECK(wc_web_from_poly("p^2 +* x", nullptr, &w) == WC_ERR_PARSE);
    CHECK(w == nullptr);
    CHECK(std::string(wc_last_error()).size() > 0);
    CHECK(wc_web_from_poly("p^2 - x", "quadext:4", &w) == WC_ERR_INVALID_ARGUMENT);
    CHECK(wc_web_from_poly(nullptr, nullptr, &w) == WC_ERR_INVALID_ARGUMENT);
    CHECK(wc_web_from_poly("p^2 - x", nullptr, nullptr) == WC_ERR_INVALID_ARGUMENT);

    REQUIRE(wc_web_from_poly("p^2 - x", nullptr, &w) == WC_OK);
    wc_web* c = nullptr;
    CHECK(wc_web_chart(w, 3, &c) == WC_ERR_INVALID_ARGUMENT);
    int flat = -2;
    REQUIRE(wc_web_flatness_verdict(w, 10, 1, 1e-6, &flat) == WC_OK);
    CHECK(flat == 1);
    char* js = nullptr;
    CHECK(wc_web_delta_report(w, 10, 1, &js) != WC_OK);
    CHECK(js == nullptr);
    wc_web_free(w);

    wc_foliation* f = nullptr;
    CHECK(wc_foliation_from_catalog("F99", &f) != WC_OK);
    CHECK(wc_foliation_from_field("x*y", "x*y^2", nullptr, &f) != WC_OK);
    CHECK(f == nullptr);
}

TEST_CASE("curvature and flatness through the C API") {
    wc_foliation* f = nullptr;
    REQUIRE(wc_foliation_from_catalog("F4", &f) == WC_OK);
    int d = 0;
    REQUIRE(wc_foliation_degree(f, &d) == WC_OK);
    CHECK(d == 4);
    wc_web* w = nullptr;
    REQUIRE(wc_foliation_to_web(f, &w) == WC_OK);
    wc_web* leg = nullptr;
    REQUIRE(wc_web_legendre(w, -1, &leg) == WC_OK);
    int k = 0;
    REQUIRE(wc_web_degrees(leg, &k, &d) == WC_OK);
    CHECK(k == 4);

    double re = 1, im = 1;
    REQUIRE(wc_web_curvature(leg, 0.3, -0.7, &re, &im) == WC_OK);
    CHECK(std::hypot(re, im) < 1e-6);

    int flat = -2;
    REQUIRE(wc_web_flatness_verdict(leg, 50, 7, 1e-6, &flat) == WC_OK);
    CHECK(flat == 1);

    wc_web* bent = nullptr;
    REQUIRE(wc_web_from_poly("p^3 - x*p^2 + y*p - x*y + 1", nullptr, &bent) == WC_OK);
    REQUIRE(wc_web_flatness_verdict(bent, 50, 7, 1e-6, &flat) == WC_OK);
    CHECK(flat == 0);

    wc_web_free(bent);
    wc_web_free(leg);
    wc_web_free(w);
    wc_foliation_free(f);
}

TEST_CASE("foliation reports") {
    wc_foliation* f = nullptr;
    REQUIRE(wc_foliation_from_field("x^3 - x", "y^3 - y", nullptr, &f) == WC_OK);
    char* js = nullptr;
    REQUIRE(wc_foliation_census(f, &js) == WC_OK);
    json c = take_json(js);
    CHECK(c["total"] == 7);
    CHECK(c["weighted"] == 10);
    CHECK(c["bound"] == 10);

    REQUIRE(wc_foliation_lines(f, &js) == WC_OK);
    CHECK(take_json(js)["lines"].size() == 9);
    REQUIRE(wc_foliation_convexity(f, &js) == WC_OK);
    CHECK(take_json(js)["convex"] == true);
    REQUIRE(wc_foliation_inflection(f, &js) == WC_OK);
    CHECK(take_json(js)["degree"] == 9);
    REQUIRE(wc_foliation_singularities(f, &js) == WC_OK);
    CHECK(take_json(js)["points"].size() == 13);

    char* doc = nullptr;
    REQUIRE(wc_foliation_document(f, &doc) == WC_OK);
    wc_foliation* g = nullptr;
    REQUIRE(wc_foliation_parse(take(doc).c_str(), nullptr, &g) == WC_OK);
    int dg = 0;
    REQUIRE(wc_foliation_degree(g, &dg) == WC_OK);
    CHECK(dg == 3);
    CHECK(wc_foliation_degree(g, nullptr) == WC_ERR_INVALID_ARGUMENT);
    wc_foliation_free(g);
    wc_foliation_free(f);
}

TEST_CASE("catalog, table and render") {
    char* js = nullptr;
    REQUIRE(wc_catalog_list(&js) == WC_OK);
    CHECK(take_json(js)["entries"].size() >= 8);
    int mismatches = -1;
    REQUIRE(wc_table1(&js, &mismatches) == WC_OK);
    CHECK(mismatches == 0);
    wc_string_free(js);

    char* svg = nullptr;
    REQUIRE(wc_render_svg("x^2 + y^2 - 1", -2, 2, -2, 2, 50, &svg) == WC_OK);
    std::string s = take(svg);
    CHECK(s.rfind("<svg", 0) == 0);
    CHECK(s.find("<path") != std::string::npos);
    CHECK(wc_render_svg("x^2 + y^2 - 1", 1, -1, -2, 2, 50, &svg) == WC_ERR_INVALID_ARGUMENT);
}
