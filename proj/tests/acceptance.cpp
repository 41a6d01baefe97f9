#include "catalog.hpp"
#include "curvature.hpp"
#include "foliation_analysis.hpp"
#include "helpers.hpp"
#include "legendre.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace webcurv;
using testing_support::P;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYP{"x", "y", "p"};

AffineWeb W(const std::string& s) { return AffineWeb::make(P(s, XYP)); }
AffineWeb dual(const Foliation& f) { return legendre_affine(foliation_to_web(f)); }
AffineWeb dual(const std::string& name) { return dual(catalog_foliation(name)); }

// catalog rows, with the pencil family taken at the parameters used for flatness
std::vector<std::pair<std::string, int>> catalog_members() {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& e : catalog_entries()) {
        if (e.name == "pencil4:<t>") {
            for (const char* t : {"1/3", "1", "7/2"}) out.emplace_back(std::string("pencil4:") + t, e.degree);
        } else {
            out.emplace_back(e.name, e.degree);
        }
    }
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void fail(const std::string& why) {
        pass = false;
        detail << " [" << why << "]";
    }
};

std::string fmt(long double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2Le", v);
    return buf;
}

// flat at threshold 1e-6, each run under a minute
void flat_runs(Outcome& o, const std::vector<std::pair<std::string, AffineWeb>>& webs) {
    for (const auto& [name, w] : webs) {
        auto t0 = std::chrono::steady_clock::now();
        FlatnessVerdict v = flatness_check(w, 200, 7);
        double dt = seconds_since(t0);
        real ratio = v.max_abs_K / v.scale;
        o.detail << " " << name << ":" << fmt(ratio);
        if (v.admissible != 200) o.fail(name + " admissible " + std::to_string(v.admissible));
        if (!(v.max_abs_K < 1e-6L * v.scale) || v.verdict != Verdict::Flat) o.fail(name + " not flat");
        if (dt >= 60) o.fail(name + " took " + std::to_string(dt) + " s");
    }
}

void c1(Outcome& o) {
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::pair<const char*, int>> table{{"F2", 4},  {"F3", 7},  {"F4", 12}, {"F5", 19},
                                                         {"F6", 28}, {"H4", 9}, {"H5", 16}, {"H7", 21}};
    for (auto [name, expected] : table) {
        int got = radial_census(catalog_foliation(name)).total;
        o.detail << " " << name << "=" << got;
        if (got != expected) o.fail(std::string(name) + " expected " + std::to_string(expected));
    }
    if (seconds_since(t0) >= 300) o.fail("over 5 min");
}

void c2(Outcome& o) {
    std::vector<std::pair<std::string, AffineWeb>> webs;
    for (const char* n : {"F3", "F4", "F5", "F6", "H4", "H5", "H7"}) webs.emplace_back(std::string("Leg ") + n, dual(n));
    o.detail << " max|K|/scale";
    flat_runs(o, webs);
}

void c3(Outcome& o) {
    // F4 with the y coefficient of B moved from -1 to -99/100
    Foliation f = Foliation::affine(P("x^4 - x", XY), P("y^4 - 99/100*y", XY));
    FlatnessVerdict v = flatness_check(dual(f), 200, 7);
    real ratio = v.max_abs_K / v.scale;
    o.detail << " verdict=" << to_string(v.verdict) << " max|K|/scale=" << fmt(ratio);
    if (v.verdict != Verdict::NotFlat) o.fail("verdict");
    if (!(ratio > 1e-3L)) o.fail("max|K| not above 1e-3 scale");
}

void c4(Outcome& o) {
    std::vector<std::pair<std::string, AffineWeb>> webs;
    for (auto [label, t] : {std::pair{"t=1/3", Scalar::fraction(1, 3)}, std::pair{"t=1", Scalar(1)},
                            std::pair{"t=7/2", Scalar::fraction(7, 2)}})
        webs.emplace_back(label, dual(fermat_pencil4(t)));
    o.detail << " max|K|/scale";
    flat_runs(o, webs);
}

void c5(Outcome& o) {
    NumericWeb w(dual("H4"));
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-2, 2);
    int n = 0;
    real worst = 0;
    for (int i = 0; i < 1000 && n < 20; ++i) {
        try {
            SlopeSet s = slope_roots(w, u(rng), u(rng));
            if (s.slopes.size() != 4) continue;
            auto j = j_invariant({Slope{s.slopes[0]}, Slope{s.slopes[1]}, Slope{s.slopes[2]}, Slope{s.slopes[3]}});
            worst = std::max(worst, std::abs(j.j));
            ++n;
        } catch (const InadmissiblePoint&) {
        }
    }
    o.detail << " samples=" << n << " max|j|=" << fmt(worst);
    if (n != 20) o.fail("too few admissible samples");
    if (!(worst < 1e-6L)) o.fail("j not zero");
}

void c6(Outcome& o) {
    for (const auto& [name, d] : catalog_members()) {
        int deg = inflection_divisor(catalog_foliation(name)).degree();
        o.detail << " degI(" << name << ")=" << deg;
        if (deg != 3 * d) o.fail(name + " inflection degree");
    }
    for (int d = 3; d <= 5; ++d) {
        int deg = projective_discriminant(dual(fermat_foliation(d))).degree();
        o.detail << " degD(Leg F" << d << ")=" << deg;
        if (deg != (d + 2) * (d - 1)) o.fail("discriminant degree for d=" + std::to_string(d));
    }
}

void c7(Outcome& o) {
    for (const char* n : {"F3", "F4", "H4", "H5"}) {
        Foliation f = catalog_foliation(n);
        MultiPoly D = projective_discriminant(dual(f));
        int checked = 0;
        for (const auto& r : radial_census(f).records) {
            if (!r.radial_order) continue;
            ++checked;
            int m = linear_factor_multiplicity(D, dual_line(r.location));
            if (m != *r.radial_order)
                o.fail(std::string(n) + " " + r.location.to_string() + " multiplicity " + std::to_string(m) + " vs order " +
                       std::to_string(*r.radial_order));
        }
        o.detail << " " << n << ":" << checked << " points";
    }
}

void c8(Outcome& o) {
    for (const auto& [name, d] : catalog_members()) {
        RadialCensus c = radial_census(catalog_foliation(name));
        o.detail << " " << name << ":" << c.weighted << "/" << c.bound;
        if (c.bound != (d + 2) * (d - 1)) o.fail(name + " bound");
        if (c.weighted > c.bound) o.fail(name + " exceeds bound");
        if ((name == "F3" || name == "H5") && c.weighted != c.bound) o.fail(name + " not equal to bound");
    }
}

void c9(Outcome& o) {
    auto H = [&](const char* a, const char* b, const char* c) {
        return std::array<MultiPoly, 3>{P(a, XY), P(b, XY), P(c, XY)};
    };
    std::vector<real> probes{0.3L, 0.7L, 1.1L};
    for (auto [a, h] : {std::pair{std::array{0, 0, 1}, H("1", "2", "1")}, std::pair{std::array{1, 2, 3}, H("1", "1", "1")},
                        std::pair{std::array{1, 1, 2}, H("1", "2", "1")}}) {
        LemmaReport r = lemma_curv_oracle(a, h, probes, 1e-3L);
        real worst = 0;
        for (const auto& p : r.probes) {
            auto rel = [](cplx got, cplx want) { return std::abs(got - want) / std::max(real(1), std::abs(want)); };
            worst = std::max({worst, rel(p.lead, p.lead_expected), rel(p.residue, p.residue_expected)});
            if (p.next_checked) worst = std::max(worst, rel(p.next, p.next_expected));
        }
        o.detail << " (" << a[0] << "," << a[1] << "," << a[2] << "):" << fmt(worst);
        if (!r.pass || !(worst < 1e-3L)) o.fail("fixture mismatch");
    }
}

int involution_suite() {
    std::mt19937_64 rng(2024);
    int checked = 0, bad = 0;
    for (int trial = 0; checked < 20 && trial < 400; ++trial) {
        Ring ring = trial % 2 ? Ring::quadext(5) : Ring::rational();
        MultiPoly F(XYP, ring);
        for (int j = 0; j <= 2; ++j) {
            MultiPoly c = testing_support::random_poly(rng, XY, ring, 2, 3).embed(XYP);
            F += c * MultiPoly::variable(XYP, 2, ring).pow(j);
        }
        if (F.degree(2) != 2) continue;
        try {
            AffineWeb w = AffineWeb::make(F);
            if (w.d() < 1) continue;
            if (!involution_check(w).pass) ++bad;
            ++checked;
        } catch (const Error&) {
        }
    }
    return checked == 20 ? bad : -1;
}

template <class F>
int sample_suite(std::uint64_t seed, real box, int want, F&& check) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-box, box);
    int n = 0, bad = 0;
    for (int i = 0; i < 50 * want && n < want; ++i) {
        cplx x = u(rng), y = u(rng);
        std::optional<bool> ok = check(x, y);
        if (!ok) continue;
        if (!*ok) ++bad;
        ++n;
    }
    return n == want ? bad : -1;
}

cplx nearest(const SlopeSet& s, cplx q) {
    cplx best = s.slopes.front();
    for (auto p : s.slopes)
        if (std::abs(p - q) < std::abs(best - q)) best = p;
    return best;
}

void c10(Outcome& o) {
    auto report = [&](const char* name, int bad) {
        o.detail << " " << name << "=" << (bad < 0 ? "short" : bad == 0 ? "ok" : std::to_string(bad) + " bad");
        if (bad != 0) o.fail(name);
    };
    report("involution", involution_suite());

    {
        AffineWeb w = W("(p - x)*(p^2 + y*p - x^2 + 3)");
        CurvatureField fw(w), fg(pullback_affine(w, {Scalar(2), Scalar(0), Scalar(0), Scalar(3)}));
        report("covariance", sample_suite(21, 1, 20, [&](cplx X, cplx Y) -> std::optional<bool> {
                   CurvatureSample a = fg.at(X, Y), b = fw.at(2.0L * X, 3.0L * Y);
                   if (!a.admissible || !b.admissible) return std::nullopt;
                   return std::abs(*a.K - 6.0L * *b.K) < 1e-8L * std::abs(6.0L * *b.K);
               }));
    }

    {
        CurvatureField f(dual("H4"));
        report("constant-j", sample_suite(31, 2, 20, [&](cplx x, cplx y) -> std::optional<bool> {
                   CurvatureSample s = f.at(x, y);
                   if (!s.admissible || s.contributions.size() != 4) return std::nullopt;
                   for (auto c : s.contributions)
                       if (!(std::abs(*s.K - 4.0L * c) < 1e-8L * std::max(real(1), std::abs(4.0L * c)))) return false;
                   return true;
               }));
    }

    {
        const real h = 1e-5L;
        auto diff = [h](auto f) { return (4.0L * (f(h) - f(-h)) / (2 * h) - (f(2 * h) - f(-2 * h)) / (4 * h)) / 3.0L; };
        int bad = 0, checked = 0;
        for (const char* name : {"F3", "F4", "H4", "H5"}) {
            NumericWeb w(dual(name));
            int here = sample_suite(77 + checked, 2, 5, [&](cplx x, cplx y) -> std::optional<bool> {
                try {
                    SlopeSet s = slope_roots(w, x, y);
                    bool ok = true;
                    for (auto p : s.slopes) {
                        BranchJet j = branch_jet(w, x, y, p);
                        auto root = [&](cplx dx, cplx dy) {
                            return nearest(slope_roots(w, x + dx, y + dy), p + j.px * dx + j.py * dy);
                        };
                        auto jet = [&](cplx dx, cplx dy) { return branch_jet(w, x + dx, y + dy, root(dx, dy)); };
                        real s1 = std::max({real(1), std::abs(j.px), std::abs(j.py)});
                        real s2 = std::max({real(1), std::abs(j.pxx), std::abs(j.pxy), std::abs(j.pyy)});
                        ok = ok && std::abs(diff([&](real t) { return root(t, 0); }) - j.px) < 1e-6L * s1 &&
                             std::abs(diff([&](real t) { return root(0, t); }) - j.py) < 1e-6L * s1 &&
                             std::abs(diff([&](real t) { return jet(t, 0).px; }) - j.pxx) < 1e-6L * s2 &&
                             std::abs(diff([&](real t) { return jet(0, t).px; }) - j.pxy) < 1e-6L * s2 &&
                             std::abs(diff([&](real t) { return jet(0, t).py; }) - j.pyy) < 1e-6L * s2;
                    }
                    return ok;
                } catch (const InadmissiblePoint&) {
                    return std::nullopt;
                }
            });
            if (here < 0) {
                bad = -1;
                break;
            }
            bad += here;
            checked += 5;
        }
        report("branch-jet", bad);
    }

    {
        CurvatureField par(W("(p - 1)*(p + 2)*(2*p - 3)"));
        CurvatureField hex(W("(x*p - y)*((x - 1)*p - y)*(x*p - (y - 1))"));
        report("parallel/hexagonal", sample_suite(4, 2, 20, [&](cplx x, cplx y) -> std::optional<bool> {
                   CurvatureSample a = par.at(x, y), b = hex.at(x, y);
                   if (!a.admissible || !b.admissible) return std::nullopt;
                   return std::abs(*a.K) < 1e-10L && std::abs(*b.K) < 1e-10L;
               }));
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"Table 1 radial counts", c1},
        {"flatness of Leg F3..F6, H4, H5, H7", c2},
        {"perturbed Leg F4 is not flat", c3},
        {"pencil t in {1/3, 1, 7/2} flat", c4},
        {"j = 0 on Leg H4", c5},
        {"deg I = 3d, deg Delta(Leg Fd) = (d+2)(d-1)", c6},
        {"dual lines of radial points: multiplicity = order", c7},
        {"sum i r_i <= (d+2)(d-1), equality for F3, H5", c8},
        {"curvature lemma fixtures", c9},
        {"property suites", c10},
    };
    int failed = 0, index = 0;
    for (const auto& [title, run] : criteria) {
        ++index;
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            run(o);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::printf("%s %d: %s;%s (%.1f s)\n", o.pass ? "PASS" : "FAIL", index, title, o.detail.str().c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed ? 1 : 0;
}
