#include <doctest.h>

#include "catalog.hpp"
#include "foliation_analysis.hpp"
#include "helpers.hpp"
#include "legendre.hpp"

#include <set>

using namespace webcurv;
using testing_support::P;

static const std::vector<std::string> XY{"x", "y"};
static const std::vector<std::string> XYZ{"x", "y", "z"};
static Foliation field(const char* a, const char* b) { return Foliation::affine(P(a, XY), P(b, XY)); }
static const char* kCatalog[] = {"F2", "F3", "F4", "F5", "F6", "H4", "H5", "H7"};

static ProjPoint affine_point(long x, long y) {
    ProjPoint p;
    p.value = {cplx(x), cplx(y), 1};
    p.exact = std::array<Scalar, 3>{Scalar(x), Scalar(y), Scalar(1)};
    return p;
}

TEST_CASE("rationalize and exact root recognition") {
    CHECK(*rationalize(0.375L) == mpq_class(3, 8));
    CHECK(*rationalize(-22.0L / 7) == mpq_class(-22, 7));
    CHECK_FALSE(rationalize(std::sqrt(2.0L)).has_value());

    auto r5 = univariate_roots(P("x^2 - 5", XY), 0);
    REQUIRE(r5.size() == 2);
    for (auto& r : r5) {
        REQUIRE(r.exact);
        CHECK(r.exact->ring() == Ring::quadext(5));
        CHECK((*r.exact * *r.exact) == Scalar(5).to_ring(Ring::quadext(5)));
    }
    auto w = univariate_roots(P("(x^2 + x + 1)*(x - 1/3)^2", XY), 0);
    REQUIRE(w.size() == 3);
    for (auto& r : w) REQUIRE(r.exact);
    CHECK(std::count_if(w.begin(), w.end(), [](auto& r) { return r.exact->ring() == Ring::rational(); }) == 1);
    // primitive fifth roots of unity live in a quartic field: floats only
    auto z5 = univariate_roots(P("x^4 + x^3 + x^2 + x + 1", XY), 0);
    REQUIRE(z5.size() == 4);
    for (auto& r : z5) {
        CHECK_FALSE(r.exact);
        CHECK(std::abs(std::pow(r.value, 5) - real(1)) < 1e-15L);
    }
    // over Q(sqrt 5): x^2 - (3 - sqrt 5) x + ... with roots 1 and 2 - sqrt 5
    Ring q5 = Ring::quadext(5);
    auto h = univariate_roots(P("(x - 1)*(x - 2 + sqrt(5))", XY, q5), 0);
    REQUIRE(h.size() == 2);
    for (auto& r : h) REQUIRE(r.exact);
}

TEST_CASE("inflection divisor of F2 is the six invariant lines") {
    MultiPoly I = inflection_divisor(fermat_foliation(2));
    MultiPoly expected = P("x*y*z*(x - y)*(y - z)*(x - z)", XYZ);
    CHECK(proportionality(I, expected).has_value());
}

TEST_CASE("deg I(F) = 3d over the catalog") {
    for (const char* n : kCatalog) {
        Foliation f = catalog_foliation(n);
        CAPTURE(n);
        CHECK(inflection_divisor(f).degree() == 3 * f.degree());
    }
}

TEST_CASE("a pencil of lines has no inflection divisor") {
    CHECK_THROWS_AS(inflection_divisor(field("x", "y")), Error);
}

TEST_CASE("invariant_line_check examples") {
    Foliation f2 = fermat_foliation(2);
    CHECK(invariant_line_check(f2, LinearForm(Scalar(1), Scalar(-1), Scalar(0))));
    CHECK_FALSE(invariant_line_check(f2, LinearForm(Scalar(1), Scalar(1), Scalar(0))));
    CHECK(invariant_line_check(hilbert_h5(), LinearForm(Scalar(1), Scalar(0), Scalar(-1))));
}

TEST_CASE("find_invariant_lines") {
    LineSearch f2 = find_invariant_lines(fermat_foliation(2));
    CHECK(f2.complete);
    std::set<std::string> got, want{"x", "y", "z", "x - y", "y - z", "x - z"};
    for (auto& l : f2.lines) got.insert(l.to_string());
    CHECK(got == want);
    CHECK(find_invariant_lines(fermat_foliation(4)).lines.size() == 12);
    LineSearch h5 = find_invariant_lines(hilbert_h5());
    CHECK(h5.lines.size() == 15);
    for (auto& l : h5.lines) CHECK(l.exact());

    // every invariant line divides the inflection divisor, and there are at most 3d of them
    for (const char* n : kCatalog) {
        Foliation f = catalog_foliation(n);
        CAPTURE(n);
        LineSearch s = find_invariant_lines(f);
        CHECK(static_cast<int>(s.lines.size()) <= 3 * f.degree());
        MultiPoly I = inflection_divisor(f);
        for (auto& l : s.lines) {
            if (l.exact())
                CHECK(linear_factor_multiplicity(I, l) >= 1);
            else
                CHECK(divide_exact(I.to_ring(Ring::complex()), l.as_poly(XYZ, Ring::complex())).has_value());
        }
    }
    CHECK_THROWS_AS(find_invariant_lines(fermat_foliation(8)), Error);
}

TEST_CASE("linear_factors of a product") {
    MultiPoly p = P("(x - 2*y + 3)*(x + 1)^2*(x^2 + y^2 - 1)", XY);
    LineSearch s = linear_factors(p);
    CHECK(s.lines.size() == 2);
    LineSearch h = linear_factors(P("z*(x - y)*(x^2 + y*z)", XYZ));
    CHECK(h.lines.size() == 2);
}

TEST_CASE("convexity reports") {
    for (int d = 2; d <= 6; ++d) {
        ConvexityReport r = convexity_report(fermat_foliation(d));
        CAPTURE(d);
        CHECK(r.convex);
        CHECK(r.reduced);
        CHECK(r.factors.size() == static_cast<std::size_t>(3 * d));
    }
    ConvexityReport h7 = convexity_report(hessian_h7());
    CHECK(h7.convex);
    CHECK(h7.reduced);
    CHECK(h7.factors.size() == 21);

    ConvexityReport p = convexity_report(field("x^3 - x + 2*y^2 - x*y", "y^3 - y + x^2"));
    CHECK_FALSE(p.convex);
    CHECK(p.cofactor.degree() > 0);
}

TEST_CASE("singular points") {
    std::vector<ProjPoint> s3 = singular_points(fermat_foliation(3));
    std::set<std::pair<long, long>> affine;
    for (auto& p : s3) {
        REQUIRE(p.exact);
        if ((*p.exact)[2].is_zero()) continue;
        affine.insert({(*p.exact)[0].rat().get_num().get_si(), (*p.exact)[1].rat().get_num().get_si()});
    }
    std::set<std::pair<long, long>> want;
    for (long x : {-1, 0, 1})
        for (long y : {-1, 0, 1}) want.insert({x, y});
    CHECK(affine == want);
    // d^2 + d + 1 singular points when all are nondegenerate or radial
    CHECK(singular_points(fermat_foliation(2)).size() == 7);
    CHECK(s3.size() == 13);
    for (auto& p : singular_points(hesse_h4())) CHECK(p.residual < 1e-12L);
}

TEST_CASE("classify_singularity") {
    Foliation f3 = fermat_foliation(3);
    SingularityRecord a = classify_singularity(f3, affine_point(1, 1));
    CHECK(a.linear_class == LinearClass::Radial);
    CHECK(a.radial_order == 1);
    SingularityRecord o = classify_singularity(f3, affine_point(0, 0));
    CHECK(o.linear_class == LinearClass::Radial);
    CHECK(o.radial_order == 2);
    CHECK(o.nu == 3);

    CHECK(classify_singularity(field("x", "-y"), affine_point(0, 0)).linear_class ==
          LinearClass::NondegenerateDiagonalizable);
    CHECK(classify_singularity(field("y", "x^2"), affine_point(0, 0)).linear_class == LinearClass::Nilpotent);
    CHECK(classify_singularity(field("x^2", "y^2"), affine_point(0, 0)).linear_class == LinearClass::Zero);
    CHECK(classify_singularity(field("x", "y^2"), affine_point(0, 0)).linear_class == LinearClass::Other);
    CHECK(classify_singularity(field("x + y", "y"), affine_point(0, 0)).linear_class == LinearClass::Other);
    CHECK_FALSE(classify_singularity(field("x", "-y"), affine_point(0, 0)).radial_order);
    CHECK_THROWS_AS(classify_singularity(f3, affine_point(2, 0)), Error);

    int order3 = 0;
    for (auto& p : singular_points(hilbert_h5())) {
        auto r = classify_singularity(hilbert_h5(), p);
        if (r.radial_order == 3) ++order3;
    }
    CHECK(order3 == 6);
}

TEST_CASE("radial order by lines agrees with the jet decomposition") {
    for (const char* n : kCatalog) {
        Foliation f = catalog_foliation(n);
        for (auto& p : singular_points(f)) {
            if (!p.exact) continue;
            auto r = classify_singularity(f, p);
            CAPTURE(n);
            CAPTURE(p.to_string());
            CHECK(radial_nu_by_jets(f, p) == r.nu);
        }
    }
}

TEST_CASE("radial census") {
    RadialCensus f3 = radial_census(fermat_foliation(3));
    CHECK(f3.counts == std::map<int, int>{{1, 4}, {2, 3}});
    CHECK(f3.total == 7);
    CHECK(radial_census(fermat_foliation(5)).total == 19);
    RadialCensus h5 = radial_census(hilbert_h5());
    CHECK(h5.counts == std::map<int, int>{{1, 10}, {3, 6}});
    CHECK(h5.weighted == 28);
    CHECK(h5.bound == 28);

    for (const auto& e : catalog_entries()) {
        if (!e.table1_radial) continue;
        RadialCensus c = radial_census(catalog_foliation(e.name));
        CAPTURE(e.name);
        CHECK(c.total == *e.table1_radial);
        CHECK(c.bound_ok);
    }
}

TEST_CASE("census bound on random foliations") {
    std::mt19937_64 rng(2024);
    int done = 0;
    for (int t = 0; t < 100 && done < 20; ++t) {
        int d = 1 + t % 4;
        Foliation f = fermat_foliation(2);
        try {
            f = Foliation::affine(testing_support::random_poly(rng, XY, Ring::rational(), d, 4),
                                  testing_support::random_poly(rng, XY, Ring::rational(), d, 4));
        } catch (const Error&) {
            continue;
        }
        if (f.degree() < 1) continue;
        RadialCensus c = radial_census(f);
        CHECK(c.bound_ok);
        CHECK(c.weighted <= (f.degree() + 2) * (f.degree() - 1));
        ++done;
    }
    CHECK(done == 20);
}

TEST_CASE("dual lines of radial points have multiplicity nu - 1 in the discriminant of Leg F") {
    for (const char* n : {"F3", "F4", "H4", "H5"}) {
        Foliation f = catalog_foliation(n);
        MultiPoly D = projective_discriminant(legendre_affine(foliation_to_web(f)));
        for (auto& r : radial_census(f).records) {
            if (!r.radial_order) continue;
            CAPTURE(n);
            CAPTURE(r.location.to_string());
            CHECK(linear_factor_multiplicity(D, dual_line(r.location)) == *r.radial_order);
        }
    }
}

TEST_CASE("tangency divisor") {
    Foliation radial = field("x", "y");
    MultiPoly T = tangency_divisor(radial, fermat_foliation(3));
    CHECK(proportionality(T, P("x*y*(y^2 - x^2)", XYZ)).has_value());
    CHECK(T.degree() == 4);
    Foliation g = field("x^3 - x + 2*y^2 - x*y", "y^3 - y + x^2");
    CHECK(tangency_divisor(fermat_foliation(3), g).degree() == 7);
    CHECK_THROWS_AS(tangency_divisor(fermat_foliation(3), fermat_foliation(3)), Error);
}

TEST_CASE("discriminant components of Leg F3") {
    Foliation f = fermat_foliation(3);
    DeltaReport rep = discriminant_component_report(legendre_affine(foliation_to_web(f)));
    int invariant = 0, doubled = 0;
    for (auto& r : radial_census(f).records) {
        auto e = *r.location.exact;
        if (!r.radial_order || (e[0].is_zero() && e[2].is_zero())) continue;
        LinearForm l = dual_line(r.location);
        MultiPoly L = l.as_poly(XY, Ring::rational());
        for (auto& c : rep.components) {
            if (!c.linear || !proportionality(P(c.component, XY), L)) continue;
            if (*r.radial_order == 1) {
                CHECK(c.multiplicity == 1);
                CHECK(c.web2_invariant);
                CHECK_FALSE(c.degenerate);
                ++invariant;
            } else {
                CHECK(c.multiplicity == 2);
                ++doubled;
            }
        }
    }
    CHECK(invariant == 4);
    CHECK(doubled == 2);  // the third order-2 point is dual to the line at infinity
}

TEST_CASE("a non-flat web has a discriminant component invariant by neither") {
    AffineWeb w = AffineWeb::make(P("(p^2 - y)*(p - x - 2)", {"x", "y", "p"}));
    DeltaReport rep = discriminant_component_report(w);
    bool neither = false;
    for (auto& c : rep.components) {
        if (c.component == "y") CHECK(c.web2_invariant);
        if (!c.linear && !c.degenerate && !c.web2_invariant && !c.barycenter_invariant) {
            neither = true;
            CHECK(c.multiplicity == 2);
            CHECK(c.web2_margin > 1e-3L);
            CHECK(c.barycenter_margin > 1e-3L);
        }
    }
    CHECK(neither);
    CHECK_THROWS_AS(discriminant_component_report(AffineWeb::make(P("p^2 - y", {"x", "y", "p"}))), Error);
}
