#include <doctest.h>

#include "catalog.hpp"
#include "helpers.hpp"
#include "legendre.hpp"
#include "slope_field.hpp"

#include <numbers>

using namespace webcurv;
using testing_support::P;

static const std::vector<std::string> XYP{"x", "y", "p"};
static AffineWeb W(const std::string& s) { return AffineWeb::make(P(s, XYP)); }
static AffineWeb dual(const char* name) { return legendre_affine(foliation_to_web(catalog_foliation(name))); }

static bool near(cplx a, cplx b, real tol) { return std::abs(a - b) <= tol * std::max(real(1), std::abs(b)); }

TEST_CASE("slope_roots examples") {
    SlopeSet s = slope_roots(W("p^2 - y"), 0, 4);
    REQUIRE(s.slopes.size() == 2);
    CHECK(near(s.slopes[0], -2, 1e-15L));
    CHECK(near(s.slopes[1], 2, 1e-15L));
    CHECK(s.separation == doctest::Approx(4));

    SlopeSet t = slope_roots(W("(p - 1)*(p - 2)*(p - 3)"), cplx(0.3, 0.1), -7);
    REQUIRE(t.slopes.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(near(t.slopes[i], i + 1, 1e-15L));
}

TEST_CASE("slope_roots on Leg F3 and residual bound") {
    AffineWeb w = dual("F3");
    NumericWeb nw(w);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    int ok = 0;
    for (int i = 0; i < 50; ++i) {
        cplx x = u(rng), y = u(rng);
        SlopeSet s;
        try {
            s = slope_roots(nw, x, y);
        } catch (const InadmissiblePoint&) {
            continue;
        }
        ++ok;
        CHECK(s.slopes.size() == 3);
        CHECK(s.separation > 0);
        auto a = nw.coefficients_at(x, y);
        for (auto p : s.slopes) {
            cplx r = 0;
            real mag = 0;
            for (std::size_t j = a.size(); j-- > 0;) r = r * p + a[j];
            for (std::size_t j = 0; j < a.size(); ++j) mag += std::abs(a[j]) * std::pow(std::abs(p), j);
            CHECK(std::abs(r) < 1e-12L * mag);
        }
    }
    CHECK(ok > 40);
}

TEST_CASE("inadmissible points are reported distinctly") {
    try {
        slope_roots(W("p^2 - y"), 0, 0);
        FAIL("expected inadmissibility");
    } catch (const InadmissiblePoint& e) {
        CHECK(e.why() == Inadmissibility::DiscriminantProximity);
    }
    try {
        slope_roots(W("x*p^2 - y - 1"), 0, 1);
        FAIL("expected inadmissibility");
    } catch (const InadmissiblePoint& e) {
        CHECK(e.why() == Inadmissibility::SlopeAtInfinity);
    }
}

TEST_CASE("branch_jet examples") {
    BranchJet j = branch_jet(W("p - 2*x"), cplx(0.7), cplx(-1.2), cplx(1.4));
    CHECK(near(j.px, 2, 1e-18L));
    CHECK(std::abs(j.py) == 0);
    CHECK(std::abs(j.pxx) + std::abs(j.pxy) + std::abs(j.pyy) == 0);

    BranchJet r = branch_jet(W("p^2 - y"), 0, 4, 2);
    CHECK(near(r.py, 0.25L, 1e-18L));
    CHECK(near(r.pyy, -1.0L / 32, 1e-18L));
    CHECK(std::abs(r.px) + std::abs(r.pxx) + std::abs(r.pxy) == 0);
}

// nearest root of the slope set to q
static cplx nearest(const SlopeSet& s, cplx q) {
    cplx best = s.slopes[0];
    for (auto p : s.slopes)
        if (std::abs(p - q) < std::abs(best - q)) best = p;
    return best;
}

TEST_CASE("branch_jet agrees with central differences of the roots") {
    // central differences with step h, Richardson-combined with step 2h to cancel the h^2 term
    const real h = 1e-5L;
    auto diff = [h](auto f) { return (4.0L * (f(h) - f(-h)) / (2 * h) - (f(2 * h) - f(-2 * h)) / (4 * h)) / 3.0L; };
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-2, 2);
    int checked = 0;
    for (const char* name : {"F3", "F4", "H4", "H5"}) {
        NumericWeb w(dual(name));
        int here = 0;
        for (int i = 0; i < 200 && here < 5; ++i) {
            cplx x = u(rng), y = u(rng);
            try {
                SlopeSet s = slope_roots(w, x, y);
                for (auto p : s.slopes) {
                    BranchJet j = branch_jet(w, x, y, p);
                    auto root = [&](cplx dx, cplx dy) { return nearest(slope_roots(w, x + dx, y + dy), p + j.px * dx + j.py * dy); };
                    auto jet = [&](cplx dx, cplx dy) { return branch_jet(w, x + dx, y + dy, root(dx, dy)); };
                    cplx px = diff([&](real t) { return root(t, 0); });
                    cplx py = diff([&](real t) { return root(0, t); });
                    real s1 = std::max({real(1), std::abs(j.px), std::abs(j.py)});
                    CHECK(std::abs(px - j.px) < 1e-6L * s1);
                    CHECK(std::abs(py - j.py) < 1e-6L * s1);
                    real s2 = std::max({real(1), std::abs(j.pxx), std::abs(j.pxy), std::abs(j.pyy)});
                    CHECK(std::abs(diff([&](real t) { return jet(t, 0).px; }) - j.pxx) < 1e-6L * s2);
                    CHECK(std::abs(diff([&](real t) { return jet(0, t).px; }) - j.pxy) < 1e-6L * s2);
                    CHECK(std::abs(diff([&](real t) { return jet(t, 0).py; }) - j.pxy) < 1e-6L * s2);
                    CHECK(std::abs(diff([&](real t) { return jet(0, t).py; }) - j.pyy) < 1e-6L * s2);
                }
                ++here;
                ++checked;
            } catch (const InadmissiblePoint&) {
            }
        }
    }
    CHECK(checked == 20);
}

TEST_CASE("barycenter_slope") {
    std::vector<cplx> pm{1, -1};
    CHECK(near(barycenter_slope({2}, pm).value, 0.5L, 1e-18L));
    Slope on = barycenter_slope({1}, pm);
    CHECK(!on.infinite);
    CHECK(on.value == cplx(1));
    CHECK(barycenter_slope({0}, pm).infinite);  // W'(0) = 0, W(0) = -1
    std::vector<cplx> one{cplx(3, 1)};
    CHECK(near(barycenter_slope({-5}, one).value, cplx(3, 1), 1e-18L));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int t = 0; t < 10; ++t) {
        std::vector<cplx> s(static_cast<std::size_t>(2 + t % 4));
        cplx mean = 0;
        for (auto& w : s) mean += (w = cplx(u(rng), u(rng)));
        mean /= static_cast<real>(s.size());
        Slope b = barycenter_slope(Slope::inf(), s);
        CHECK(near(b.value, mean, 1e-15L));
        // and as the limit of large finite centers
        CHECK(near(barycenter_slope({1e7L}, s).value, mean, 1e-5L));
    }
}

TEST_CASE("j-invariant examples") {
    cplx w = std::polar(1.0L, std::numbers::pi_v<real> / 3);
    CHECK(std::abs(j_invariant({Slope{0}, Slope{1}, Slope::inf(), Slope{w}}).j) < 1e-12L);
    CHECK(near(j_invariant({Slope{0}, Slope{1}, Slope::inf(), Slope{-1}}).j, 1728, 1e-15L));
    CHECK_THROWS_AS(j_invariant({Slope{0}, Slope{1}, Slope{1}, Slope{2}}), Error);
    CHECK(j_invariant({Slope{0}, Slope{1}, Slope{1 + 1e-9L}, Slope{2}}).near_degenerate);
}

TEST_CASE("j-invariant is invariant under permutations and Moebius maps") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int t = 0; t < 10; ++t) {
        std::array<cplx, 4> z;
        for (auto& v : z) v = cplx(u(rng), u(rng));
        JInvariant j0 = j_invariant({Slope{z[0]}, Slope{z[1]}, Slope{z[2]}, Slope{z[3]}});
        std::array<int, 4> perm{0, 1, 2, 3};
        do {
            auto j = j_invariant({Slope{z[perm[0]]}, Slope{z[perm[1]]}, Slope{z[perm[2]]}, Slope{z[perm[3]]}});
            CHECK(near(j.j, j0.j, 1e-9L));
        } while (std::next_permutation(perm.begin(), perm.end()));
        cplx a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng)), d(u(rng), u(rng));
        std::array<Slope, 4> m;
        for (int i = 0; i < 4; ++i) m[i] = Slope{(a * z[i] + b) / (c * z[i] + d)};
        CHECK(near(j_invariant(m).j, j0.j, 1e-8L));
        // a map sending z[1] to infinity
        std::array<Slope, 4> inf{Slope{1.0L / (z[0] - z[1])}, Slope::inf(), Slope{1.0L / (z[2] - z[1])},
                                 Slope{1.0L / (z[3] - z[1])}};
        CHECK(near(j_invariant(inf).j, j0.j, 1e-8L));
    }
}

TEST_CASE("Leg H4 has constant j-invariant zero") {
    NumericWeb w(dual("H4"));
    REQUIRE(w.k() == 4);
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-2, 2);
    int n = 0;
    for (int i = 0; i < 500 && n < 20; ++i) {
        try {
            SlopeSet s = slope_roots(w, u(rng), u(rng));
            auto j = j_invariant({Slope{s.slopes[0]}, Slope{s.slopes[1]}, Slope{s.slopes[2]}, Slope{s.slopes[3]}});
            CHECK(std::abs(j.j) < 1e-6L);
            ++n;
        } catch (const InadmissiblePoint&) {
        }
    }
    CHECK(n == 20);
}
