#pragma once

#include "curvature.hpp"
#include "foliation_analysis.hpp"

#include <json.hpp>

namespace webcurv {

inline constexpr int kSchemaVersion = 1;

// Key-value web definition document:
//   name = ...            (optional)
//   ring = rational | quadext:<D> | complex
//   vars = x, y, p        (or x, y for a vector field)
//   F = <polynomial>      or   vectorfield = <A>, <B>
// '#' starts a comment.
struct WebDocument {
    std::string name;
    AffineWeb web;
    std::optional<Foliation> foliation;
};

WebDocument parse_web_document(std::string_view text, std::optional<Ring> ring_override = std::nullopt);
std::string web_document(const AffineWeb& w, const std::string& name = "");
std::string foliation_document(const Foliation& f, const std::string& name = "");
// The foliation of a 1-web F = a1 p + a0, i.e. a1 d/dx - a0 d/dy.
Foliation web_to_foliation(const AffineWeb& w);

using json = nlohmann::json;

json report_web(const AffineWeb& w);
json report_discriminant(const AffineWeb& w, bool reduced);
json report_inflection(const Foliation& f);
json report_lines(const Foliation& f);
json report_convexity(const Foliation& f);
json report_singularities(const Foliation& f);
json report_census(const Foliation& f);
json report_flatness(const FlatnessVerdict& v);
json report_delta(const DeltaReport& r);
json report_catalog();
// Census over the catalog against Table 1; mismatches counts rows that differ.
json report_table1(int& mismatches);

struct RenderOptions {
    real xmin = -2, xmax = 2, ymin = -2, ymax = 2;
    int grid = 200;
};

// Zero set of a real polynomial in two variables as an 800x800 SVG (marching squares).
std::string render_svg(const MultiPoly& P, const RenderOptions& opts = {});

}  // namespace webcurv
