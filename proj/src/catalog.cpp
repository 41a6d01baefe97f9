#include "catalog.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace webcurv {

namespace {

MultiPoly xy(const std::string& s, Ring r = Ring::rational()) { return parse_poly(s, plane_vars(), r); }
MultiPoly xyz(const std::string& s) { return parse_poly(s, proj_plane_vars(), Ring::rational()); }

}  // namespace

Foliation fermat_foliation(int d) {
    if (d < 2) throw Error(ErrorCode::Domain, "fermat_foliation needs d >= 2");
    std::string e = std::to_string(d);
    return Foliation::affine(xy("x^" + e + " - x"), xy("y^" + e + " - y"));
}

Foliation fermat_pencil4(const Scalar& t) {
    MultiPoly a0 = xy("(x^3 - 1)*x"), b0 = xy("(y^3 - 1)*y");
    MultiPoly a1 = xy("(x^3 - 1)*y^2"), b1 = xy("(y^3 - 1)*x^2");
    return Foliation::affine(a0 + a1 * t, b0 + b1 * t);
}

Foliation fermat_pencil4_z1() { return Foliation::affine(xy("(x^3 - 1)*y^2"), xy("(y^3 - 1)*x^2")); }

Foliation hesse_h4() {
    // omega = f dg - g df restricted to z = 1
    MultiPoly f = xy("x^3 + y^3 + 1"), g = xy("3*x*y");
    MultiPoly P = f * g.derivative(0) - g * f.derivative(0);
    MultiPoly Q = f * g.derivative(1) - g * f.derivative(1);
    return Foliation::from_form(P, Q);
}

Foliation hilbert_h5() {
    Ring r = Ring::quadext(5);
    MultiPoly Q = xy("(x^2 - 1)*(x^2 - (sqrt(5) - 2)^2)*(x + sqrt(5)*y)", r);
    MultiPoly P = xy("(y^2 - 1)*(y^2 - (sqrt(5) - 2)^2)*(y + sqrt(5)*x)", r);
    return Foliation::from_form(-P, Q);  // Q dy - P dx
}

Foliation hessian_h7() {
    return Foliation::affine(xy("(x^3 - 1)*(x^3 + 7*y^3 + 1)*x"), xy("(y^3 - 1)*(y^3 + 7*x^3 + 1)*y"));
}

ProjWeb triangular_web(int p, int q) {
    if (q < 1 || p == 0 || std::gcd(std::abs(p), q) != 1)
        throw Error(ErrorCode::Domain, "triangular_web needs coprime p != 0 and q >= 1");
    const int ap = std::abs(p);
    if ((p > 0 ? p * q : 2 * ap * q) * q > 60) throw Error(ErrorCode::Limit, "triangular_web expansion cap exceeded");
    // u, v, w stand for x^{1/q}, y^{1/q}, z^{1/q}
    const std::vector<std::string> V{"u", "v", "w", "a", "b", "c"};
    Ring cr = Ring::complex();
    auto var = [&](std::size_t i) { return MultiPoly::variable(V, i, cr); };
    MultiPoly u = var(0), v = var(1), w = var(2);
    MultiPoly ca, cb, cc;
    if (p > 0) {
        ca = u.pow(ap) * var(3);
        cb = v.pow(ap) * var(4);
        cc = w.pow(ap) * var(5);
    } else {
        ca = (v * w).pow(ap) * var(3);
        cb = (u * w).pow(ap) * var(4);
        cc = (u * v).pow(ap) * var(5);
    }
    MultiPoly prod = MultiPoly::constant(V, Scalar::one(cr));
    for (int n = 1; n <= q; ++n)
        for (int m = 1; m <= q; ++m) {
            auto zeta = [q](int j) {
                long double th = 2 * std::numbers::pi_v<long double> * j / q;
                return Scalar::complex({std::cos(th), std::sin(th)});
            };
            prod = prod * (ca + cb * zeta(m) + cc * zeta(n));
        }
    real scale = prod.max_abs_coefficient();
    MultiPoly out(bihom_vars(), Ring::rational());
    for (const auto& [m, c] : prod.terms()) {
        cplx z = c.to_complex();
        if (std::abs(z) <= 1e-9L * scale) continue;
        std::vector<int> ex(6);
        for (std::size_t i = 0; i < 6; ++i) ex[i] = exponent(m, i);
        for (std::size_t i = 0; i < 3; ++i) {
            if (ex[i] % q) throw Error(ErrorCode::Numeric, "triangular_web: fractional exponent survived expansion");
            ex[i] /= q;
        }
        long double re = std::round(z.real());
        if (std::abs(z.real() - re) > 1e-6L || std::abs(z.imag()) > 1e-6L)
            throw Error(ErrorCode::Numeric, "triangular_web: coefficient failed integer rounding");
        out.add_term(make_monomial(ex), Scalar(static_cast<long>(re)));
    }
    return ProjWeb::make(out);
}

Scalar foliated_genus(int d) {
    if (d < 2) throw Error(ErrorCode::Domain, "foliated_genus needs d >= 2");
    return Scalar::fraction(-d * d + 5 * d - 8, 2);
}

FirstIntegral fermat_first_integral(int d) {
    std::string e = std::to_string(d - 1);
    return {xyz("z^" + e + "*(y^" + e + " - x^" + e + ")"), xyz("y^" + e + "*(x^" + e + " - z^" + e + ")")};
}

FirstIntegral fermat_first_integral_intro(int d) {
    std::string e = std::to_string(d - 1);
    return {xyz("x^" + e + "*(y^" + e + " - z^" + e + ")"), xyz("y^" + e + "*(x^" + e + " - z^" + e + ")")};
}

bool is_first_integral(const Foliation& f, const FirstIntegral& fi) {
    const auto& X = f.homogeneous_field();
    auto apply = [&](const MultiPoly& g) {
        MultiPoly s(proj_plane_vars(), join(g.ring(), f.ring()));
        for (std::size_t i = 0; i < 3; ++i) s += X[i] * g.derivative(i);
        return s;
    };
    return (apply(fi.num) * fi.den - fi.num * apply(fi.den)).is_zero();
}

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries{
        {"F2", "Fermat foliation (x^2-x)d/dx + (y^2-y)d/dy", 2, 4, 6},
        {"F3", "Fermat foliation (x^3-x)d/dx + (y^3-y)d/dy", 3, 7, 9},
        {"F4", "Fermat foliation (x^4-x)d/dx + (y^4-y)d/dy", 4, 12, 12},
        {"F5", "Fermat foliation (x^5-x)d/dx + (y^5-y)d/dy", 5, 19, 15},
        {"F6", "Fermat foliation (x^6-x)d/dx + (y^6-y)d/dy", 6, 28, 18},
        {"H4", "Hesse pencil foliation f dg - g df, f = x^3+y^3+z^3, g = 3xyz", 4, 9, 12},
        {"H5", "Hilbert modular foliation over Q(sqrt 5)", 5, 16, 15},
        {"H7", "Hessian-group invariant foliation of degree 7", 7, 21, 21},
        {"Z1", "Fermat pencil member Z1 = (x^3-1)y^2 d/dx + (y^3-1)x^2 d/dy", 4, std::nullopt, std::nullopt},
        {"pencil4:<t>", "Fermat pencil Z0 + t Z1 (t rational, e.g. pencil4:7/2)", 4, std::nullopt, std::nullopt},
    };
    return entries;
}

Foliation catalog_foliation(const std::string& name) {
    if (name == "H4") return hesse_h4();
    if (name == "H5") return hilbert_h5();
    if (name == "H7") return hessian_h7();
    if (name == "Z1") return fermat_pencil4_z1();
    if (name.size() >= 2 && name[0] == 'F' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
        int d = std::stoi(name.substr(1));
        if (d > 12) throw Error(ErrorCode::Limit, "Fermat degree capped at 12");
        return fermat_foliation(d);
    }
    if (name.starts_with("pencil4:")) {
        MultiPoly t = parse_poly(name.substr(8), {}, Ring::rational());
        if (!t.is_constant()) throw Error(ErrorCode::InvalidArgument, "pencil parameter must be a rational constant");
        return fermat_pencil4(t.constant_term());
    }
    throw Error(ErrorCode::InvalidArgument, "unknown catalog entry '" + name + "'");
}

}  // namespace webcurv
