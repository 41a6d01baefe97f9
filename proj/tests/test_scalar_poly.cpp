#include <doctest.h>

#include "algebra.hpp"
#include "helpers.hpp"

using namespace webcurv;
using testing_support::P;
using testing_support::random_poly;

static const std::vector<std::string> XYP{"x", "y", "p"};
static const std::vector<std::string> XY{"x", "y"};

TEST_CASE("scalar rings") {
    Scalar half = Scalar::fraction(2, -4);
    CHECK(half.rat().get_num() == -1);
    CHECK(half.rat().get_den() == 2);

    // (1 + 2 sqrt5)(3 - sqrt5) = 3 - sqrt5 + 6 sqrt5 - 10 = -7 + 5 sqrt5
    Scalar a = Scalar::quad(1, 2, 5), b = Scalar::quad(3, -1, 5);
    Scalar c = a * b;
    CHECK(c.rat() == -7);
    CHECK(c.irr() == 5);
    CHECK((c / b) == a);
    CHECK((a * a.inverse()).is_one());

    CHECK_THROWS_AS(Scalar::quad(1, 1, 5) + Scalar::quad(1, 1, 3), Error);
    CHECK_THROWS_AS(Ring::quadext(4), Error);
    CHECK(Scalar::sqrt_of(12) == Scalar::quad(0, 2, 3));
    CHECK(Scalar::sqrt_of(-3).to_complex().imag() == doctest::Approx(1.7320508075688772));

    Scalar z = Scalar::complex({1, 2});
    CHECK(approx_equal(z * z.inverse(), Scalar(1), 1e-15));
}

TEST_CASE("parse_poly examples") {
    MultiPoly f = P("p^2 - y", XYP);
    CHECK(f.size() == 2);
    CHECK(f.coefficient(var_monomial(2, 2)) == Scalar(1));
    CHECK(f.coefficient(var_monomial(1, 1)) == Scalar(-1));

    MultiPoly g = P("(x^3-1)*x", XY);
    CHECK(g == P("x^4 - x", XY));
    CHECK(g.to_string() == "x^4 - x");

    MultiPoly h = P("(x + sqrt(5)*y)", XY, Ring::quadext(5));
    CHECK(h.coefficient(var_monomial(0, 1)) == Scalar(1));
    CHECK(h.coefficient(var_monomial(1, 1)) == Scalar::quad(0, 1, 5));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(P("x + ", XY), ParseError);
    CHECK_THROWS_AS(P("x + w", XY), ParseError);
    CHECK_THROWS_AS(P("sqrt(5)*x", XY), ParseError);
    CHECK_THROWS_AS(P("sqrt(3)*x", XY, Ring::quadext(5)), ParseError);
    CHECK_THROWS_AS(P("x/y", XY), ParseError);
    try {
        P("x + * y", XY);
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK(P("x/2 + 3/4", XY).to_string() == "1/2*x + 3/4");
    CHECK(P("-x^2 + (2)*(x - y)^2", XY) == P("x^2 - 4*x*y + 2*y^2", XY));
}

TEST_CASE("parse print parse is a fixed point") {
    std::mt19937_64 rng(11);
    for (Ring ring : {Ring::rational(), Ring::quadext(5), Ring::quadext(-3), Ring::complex()}) {
        for (int i = 0; i < 100; ++i) {
            MultiPoly f = random_poly(rng, XYP, ring, 4, 6);
            std::string s = f.to_string();
            MultiPoly g = parse_poly(s, XYP, ring);
            if (ring.exact())
                CHECK_MESSAGE(g == f, s);
            else
                CHECK(proportionality(g, f, 1e-15).has_value());
            CHECK(parse_poly(g.to_string(), XYP, ring).to_string() == g.to_string());
        }
    }
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(5);
    for (Ring ring : {Ring::rational(), Ring::quadext(5)}) {
        for (int i = 0; i < 25; ++i) {
            auto a = random_poly(rng, XY, ring, 3, 4), b = random_poly(rng, XY, ring, 3, 4),
                 c = random_poly(rng, XY, ring, 3, 4);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            if (!b.is_zero()) {
                auto q = divide_exact(a * b, b);
                REQUIRE(q.has_value());
                CHECK(*q == a);
            }
        }
    }
}

TEST_CASE("division detects non-divisibility") {
    CHECK_FALSE(divide_exact(P("x^2 + y", XY), P("x - y", XY)).has_value());
    CHECK(*divide_exact(P("x^3 - y^3", XY), P("x - y", XY)) == P("x^2 + x*y + y^2", XY));
}

TEST_CASE("resultant examples") {
    std::vector<std::string> V{"a", "b", "p"};
    CHECK(resultant(P("p - a", V), P("p - b", V), "p") == P("a - b", V));
    CHECK(resultant(P("p^2 - y", XYP), P("2*p", XYP), "p") == P("-4*y", XYP));
    CHECK(resultant(P("p^2 - x", XYP), P("p^2 - y", XYP), "p") == P("(x - y)^2", XYP));
    CHECK_THROWS_AS(resultant(P("x", XYP), P("y", XYP), "p"), Error);
}

TEST_CASE("resultant against root-product oracle") {
    // Res(f,g) = lc(f)^n lc(g)^m prod (alpha_i - beta_j) with roots chosen up front
    std::vector<std::string> V{"p"};
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> r(-6, 6);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<long> al(1 + trial % 3), be(1 + trial % 4);
        for (auto& a : al) a = r(rng);
        for (auto& b : be) b = r(rng);
        Scalar lf(2 + trial % 3), lg(-1 - trial % 2);
        MultiPoly f = MultiPoly::constant(V, lf), g = MultiPoly::constant(V, lg);
        Scalar expect = Scalar(1);
        MultiPoly pv = MultiPoly::variable(V, 0);
        for (long a : al) f = f * (pv - MultiPoly::constant(V, Scalar(a)));
        for (long b : be) g = g * (pv - MultiPoly::constant(V, Scalar(b)));
        for (long a : al)
            for (long b : be) expect *= Scalar(a - b);
        for (std::size_t i = 0; i < be.size(); ++i) expect *= lf;
        for (std::size_t i = 0; i < al.size(); ++i) expect *= lg;
        CHECK(resultant(f, g, "p").constant_term() == expect);
    }
}

TEST_CASE("resultant antisymmetry and method agreement") {
    std::mt19937_64 rng(17);
    for (Ring ring : {Ring::rational(), Ring::quadext(5)}) {
        for (int i = 0; i < 12; ++i) {
            auto f = random_poly(rng, XYP, ring, 3, 5), g = random_poly(rng, XYP, ring, 3, 5);
            if (f.degree(2) < 1 || g.degree(2) < 1) continue;
            auto r1 = resultant(f, g, 2, ResultantMethod::Bareiss);
            auto r2 = resultant(f, g, 2, ResultantMethod::Interpolation);
            CHECK(r1 == r2);
            auto r3 = resultant(g, f, 2);
            int sign = (f.degree(2) * g.degree(2)) % 2 ? -1 : 1;
            CHECK(r3 == r2 * Scalar(sign));
        }
    }
}

TEST_CASE("gcd and squarefree") {
    CHECK(squarefree_part(P("x^2*y", XY)) == P("x*y", XY));
    CHECK(squarefree_part(P("(x-y)^3*(x+y)", XY)) == P("(x-y)*(x+y)", XY));
    CHECK_THROWS_AS(squarefree_part(P("x", XY, Ring::complex())), Error);

    std::mt19937_64 rng(23);
    for (Ring ring : {Ring::rational(), Ring::quadext(5)}) {
        for (int i = 0; i < 10; ++i) {
            auto a = random_poly(rng, XYP, ring, 2, 3), b = random_poly(rng, XYP, ring, 2, 3),
                 c = random_poly(rng, XYP, ring, 2, 3);
            if (a.is_constant() || b.is_constant() || c.is_constant()) continue;
            auto g = gcd(a * c, b * c);
            CHECK(divide_exact(g, c.monic()).has_value());
            auto s = squarefree_part(a);
            CHECK(proportionality(squarefree_part(a * a), s).has_value());
            CHECK(divide_exact(a, s).has_value());
        }
    }
}

TEST_CASE("linear factor multiplicity") {
    MultiPoly f = P("y^2*(x - 1)", XY);
    CHECK(linear_factor_multiplicity(f, LinearForm(0, 1, 0)) == 2);
    CHECK(linear_factor_multiplicity(f, LinearForm(1, 0, 0)) == 0);
    CHECK(linear_factor_multiplicity(f, LinearForm(1, 0, -1)) == 1);
    LinearForm l(2, 4, -6);
    CHECK(l.c[0].is_one());
    CHECK(l.c[1] == Scalar(2));
    CHECK(LinearForm(l.c[0], l.c[1], l.c[2]) == l);
}
