#include "web_model.hpp"

#include <algorithm>
#include <random>

namespace webcurv {

namespace {

constexpr std::size_t X = 0, Y = 1, Z = 2, A = 3, B = 4, C = 5;
constexpr std::size_t PV = 2;  // slope variable in affine_vars()

MultiPoly bvar(std::size_t i, const Ring& r) { return MultiPoly::variable(bihom_vars(), i, r); }

// Replace (u*w)^t inside every monomial by repl^t where t = min(exp u, exp w).
MultiPoly reduce_pair(const MultiPoly& P, std::size_t u, std::size_t w, const MultiPoly& repl) {
    MultiPoly out(P.vars(), P.ring());
    std::vector<MultiPoly> pw{MultiPoly::constant(P.vars(), Scalar::one(P.ring()))};
    for (const auto& [m, c] : P.terms()) {
        int t = std::min(exponent(m, u), exponent(m, w));
        if (t == 0) {
            out.add_term(m, c);
            continue;
        }
        while (static_cast<int>(pw.size()) <= t) pw.push_back(pw.back() * repl);
        Monomial rest = set_exponent(set_exponent(m, u, exponent(m, u) - t), w, exponent(m, w) - t);
        for (const auto& [mr, cr] : pw[static_cast<std::size_t>(t)].terms()) out.add_term(rest + mr, c * cr);
    }
    return out;
}

MultiPoly drop_var(const MultiPoly& f, std::size_t var, const std::vector<std::string>& target) {
    if (f.involves(var)) throw Error(ErrorCode::InvalidArgument, "variable still present");
    return f.embed(target);
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t s) : gen(s) {}
    long uniform(long lo, long hi) { return lo + static_cast<long>(gen() % static_cast<std::uint64_t>(hi - lo + 1)); }
    Scalar rational17() { return Scalar::fraction(uniform(-17, 17), uniform(1, 7)); }
};

int numeric_degree(const MultiPoly& f, std::size_t var) {
    real scale = f.max_abs_coefficient();
    int d = -1;
    for (const auto& [m, c] : f.terms())
        if (c.magnitude() > 1e-12L * scale) d = std::max(d, exponent(m, var));
    return d;
}

}  // namespace

MultiPoly reduce_zc(const MultiPoly& P) {
    Ring r = P.ring();
    return reduce_pair(P, Z, C, -(bvar(X, r) * bvar(A, r) + bvar(Y, r) * bvar(B, r)));
}

MultiPoly reduce_ax(const MultiPoly& P) {
    Ring r = P.ring();
    return reduce_pair(P, A, X, -(bvar(B, r) * bvar(Y, r) + bvar(C, r) * bvar(Z, r)));
}

int web_degree(const MultiPoly& F, std::uint64_t seed) {
    Rng rng(seed);
    const std::vector<std::string> xv{"x"};
    const bool exact = F.ring().exact();
    std::vector<int> degs;
    for (int attempt = 0; attempt < 10; ++attempt) {
        Scalar m = rng.rational17(), c = rng.rational17();
        MultiPoly xx = MultiPoly::variable(xv, 0, F.ring());
        std::vector<MultiPoly> images{xx, xx * m + MultiPoly::constant(xv, c), MultiPoly::constant(xv, m)};
        MultiPoly g = F.compose(images);
        int d = exact ? g.degree(0) : numeric_degree(g, 0);
        if (d < 0) continue;  // the chosen line is a leaf
        degs.push_back(d);
        int top = *std::max_element(degs.begin(), degs.end());
        if (std::count(degs.begin(), degs.end(), top) >= 3) return top;
    }
    throw Error(ErrorCode::Degenerate, "web_degree: degenerate line choices exhausted the retry budget");
}

AffineWeb AffineWeb::make(const MultiPoly& F, WebOptions opts) {
    AffineWeb w;
    w.F_ = F.embed(affine_vars());
    w.k_ = w.F_.degree(PV);
    if (w.k_ < 1) throw Error(ErrorCode::Domain, "F must involve the slope variable p");
    if (opts.validate && w.F_.ring().exact()) {
        Rng rng(0xd15c);
        bool good = w.k_ == 1;
        for (int attempt = 0; attempt < 8 && !good; ++attempt) {
            Scalar x0 = rng.rational17(), y0 = rng.rational17();
            MultiPoly f = w.F_.substitute(0, x0).substitute(1, y0);
            if (f.degree(PV) < w.k_) continue;
            good = !resultant(f, f.derivative(PV), PV).is_zero();
        }
        if (!good && !opts.allow_nonreduced)
            throw Error(ErrorCode::Degenerate, "identically zero discriminant: F has a repeated factor in p");
        MultiPoly cont = content_in(w.F_, PV);
        if (!opts.allow_nonreduced && !cont.is_constant() && !is_squarefree(cont))
            throw Error(ErrorCode::Degenerate, "F has a repeated factor");
    }
    w.d_ = web_degree(w.F_);
    return w;
}

ProjWeb ProjWeb::make(const MultiPoly& P) {
    ProjWeb w;
    w.P_ = reduce_zc(P.embed(bihom_vars()));
    if (w.P_.is_zero()) throw Error(ErrorCode::Degenerate, "P reduces to zero modulo xa+yb+zc");
    const std::size_t pos[] = {X, Y, Z}, dir[] = {A, B, C};
    if (!w.P_.is_homogeneous(pos, &w.d_) || !w.P_.is_homogeneous(dir, &w.k_))
        throw Error(ErrorCode::InvalidArgument, "P is not bihomogeneous");
    return w;
}

Foliation Foliation::affine(const MultiPoly& A0, const MultiPoly& B0) {
    Foliation f;
    f.A_ = A0.embed(plane_vars());
    f.B_ = B0.embed(plane_vars());
    Ring r = join(f.A_.ring(), f.B_.ring());
    f.A_ = f.A_.to_ring(r);
    f.B_ = f.B_.to_ring(r);
    if (f.A_.is_zero() && f.B_.is_zero()) throw Error(ErrorCode::Degenerate, "zero vector field");
    if (r.exact() && !gcd(f.A_, f.B_).is_constant())
        throw Error(ErrorCode::Degenerate, "A and B share a common factor (non-isolated singularities)");
    int D = std::max(f.A_.degree(), f.B_.degree());
    auto top = [D](const MultiPoly& p) {
        MultiPoly t(p.vars(), p.ring());
        for (const auto& [m, c] : p.terms())
            if (total_degree(m) == D) t.add_term(m, c);
        return t;
    };
    MultiPoly At = top(f.A_), Bt = top(f.B_);
    MultiPoly x = MultiPoly::variable(plane_vars(), 0, r), y = MultiPoly::variable(plane_vars(), 1, r);
    auto lift = [&](const MultiPoly& p, int deg) {
        MultiPoly h(proj_plane_vars(), r);
        for (const auto& [m, c] : p.terms()) h.add_term(m | var_monomial(2, deg - total_degree(m)), c);
        return h;
    };
    bool radial = D >= 1 && x * Bt == y * At;
    if (radial) {
        MultiPoly g = divide_or_throw(At, x);
        f.degree_ = D - 1;
        f.X_ = {lift(f.A_ - At, f.degree_), lift(f.B_ - Bt, f.degree_), lift(-g, f.degree_)};
    } else {
        f.degree_ = D;
        f.X_ = {lift(f.A_, D), lift(f.B_, D), MultiPoly(proj_plane_vars(), r)};
    }
    return f;
}

Foliation Foliation::homogeneous(const MultiPoly& A0, const MultiPoly& B0, const MultiPoly& C0) {
    std::array<MultiPoly, 3> X{A0.embed(proj_plane_vars()), B0.embed(proj_plane_vars()),
                               C0.embed(proj_plane_vars())};
    int d = -1;
    const std::size_t all[] = {0, 1, 2};
    for (auto& c : X) {
        int dc = 0;
        if (c.is_zero()) continue;
        if (!c.is_homogeneous(all, &dc) || (d >= 0 && dc != d))
            throw Error(ErrorCode::InvalidArgument, "homogeneous field components must share one degree");
        d = dc;
    }
    if (d < 0) throw Error(ErrorCode::Degenerate, "zero vector field");
    auto at1 = [](const MultiPoly& p) { return drop_var(p.substitute(2, Scalar(1)), 2, plane_vars()); };
    MultiPoly x = MultiPoly::variable(plane_vars(), 0), y = MultiPoly::variable(plane_vars(), 1);
    MultiPoly c1 = at1(X[2]);
    Foliation f = affine(at1(X[0]) - x * c1, at1(X[1]) - y * c1);
    if (f.degree_ != d) throw Error(ErrorCode::Degenerate, "homogeneous field has a common factor or is radial");
    f.X_ = X;
    return f;
}

Foliation Foliation::from_form(const MultiPoly& P, const MultiPoly& Q) {
    MultiPoly a = Q.embed(plane_vars()), b = -P.embed(plane_vars());
    if (join(a.ring(), b.ring()).exact()) {
        MultiPoly g = gcd(a, b);
        if (!g.is_constant()) {
            a = divide_or_throw(a, g);
            b = divide_or_throw(b, g);
        }
    }
    return affine(a, b);
}

AffineWeb foliation_to_web(const Foliation& f) {
    const auto& V = affine_vars();
    MultiPoly p = MultiPoly::variable(V, PV, f.ring());
    return AffineWeb::make(f.A().embed(V) * p - f.B().embed(V));
}

MultiPoly discriminant(const AffineWeb& w, bool reduced) {
    if (!w.ring().exact()) throw Error(ErrorCode::Domain, "discriminant requires an exact ring");
    MultiPoly F = w.F();
    MultiPoly cont = content_in(F, PV);
    if (!cont.is_constant()) F = divide_or_throw(F, cont);
    MultiPoly res = resultant(F, F.derivative(PV), PV);
    MultiPoly disc = divide_or_throw(res, F.leading_coefficient_in(PV));
    if (disc.is_zero()) throw Error(ErrorCode::Degenerate, "identically zero discriminant (not a web)");
    disc = drop_var(disc, PV, plane_vars());
    return reduced ? squarefree_part(disc) : disc;
}

MultiPoly projective_discriminant(const AffineWeb& w) {
    MultiPoly d2 = discriminant(w);
    AffineWeb w0 = dehomogenize(homogenize(w), 0, {.allow_nonreduced = true, .validate = false});
    MultiPoly d0 = discriminant(w0);
    int m = d0.is_constant() ? 0 : linear_factor_multiplicity(d0, LinearForm(0, 1, 0));
    MultiPoly h = homogenize_poly(d2, "z");
    return h * MultiPoly::variable(proj_plane_vars(), 2, h.ring()).pow(static_cast<unsigned>(m));
}

ProjWeb homogenize(const AffineWeb& w) {
    Ring r = w.ring();
    auto coeffs = w.coefficients();
    const int k = w.k();
    int D = 0;
    for (const auto& c : coeffs) D = std::max(D, c.degree());
    MultiPoly P0(bihom_vars(), r);
    MultiPoly ma = -bvar(A, r), bb = bvar(B, r);
    for (int j = 0; j <= k; ++j) {
        const MultiPoly& f = coeffs[static_cast<std::size_t>(j)];
        if (f.is_zero()) continue;
        MultiPoly lifted(bihom_vars(), r);
        for (const auto& [m, c] : f.terms())
            lifted.add_term(var_monomial(X, exponent(m, 0)) | var_monomial(Y, exponent(m, 1)) |
                                var_monomial(Z, D - total_degree(m)),
                            c);
        P0 += lifted * ma.pow(static_cast<unsigned>(j)) * bb.pow(static_cast<unsigned>(k - j));
    }
    MultiPoly P1 = reduce_ax(P0);
    int e = kMaxExponent;
    for (const auto& [m, c] : P1.terms()) e = std::min(e, exponent(m, Z));
    MultiPoly P2(bihom_vars(), r);
    for (const auto& [m, c] : P1.terms()) P2.add_term(set_exponent(m, Z, exponent(m, Z) - e), c);
    return ProjWeb::make(P2);
}

AffineWeb dehomogenize(const ProjWeb& P, int chart, WebOptions opts) {
    const auto& V = affine_vars();
    Ring r = P.ring();
    MultiPoly x = MultiPoly::variable(V, 0, r), y = MultiPoly::variable(V, 1, r), p = MultiPoly::variable(V, 2, r);
    MultiPoly one = MultiPoly::constant(V, Scalar::one(r));
    std::vector<MultiPoly> images;
    switch (chart) {
        case 0: images = {one, x, y, x * p - y, -p, one}; break;
        case 1: images = {x, one, y, p, y - x * p, -one}; break;
        case 2: images = {x, y, one, -p, one, x * p - y}; break;
        default: throw Error(ErrorCode::InvalidArgument, "chart must be 0, 1 or 2");
    }
    MultiPoly F = P.P().compose(images);
    if (F.is_zero() || F.degree(PV) < 1)
        throw Error(ErrorCode::Degenerate, "web degenerates entirely in chart " + std::to_string(chart));
    return AffineWeb::make(F, opts);
}

AffineWeb pullback_affine(const AffineWeb& w, const std::array<Scalar, 4>& M, const std::array<Scalar, 2>& t,
                          WebOptions opts) {
    const auto& V = affine_vars();
    Ring r = w.ring();
    for (auto& s : M) r = join(r, s.ring());
    for (auto& s : t) r = join(r, s.ring());
    MultiPoly x = MultiPoly::variable(V, 0, r), y = MultiPoly::variable(V, 1, r), p = MultiPoly::variable(V, 2, r);
    MultiPoly one = MultiPoly::constant(V, Scalar::one(r));
    std::vector<MultiPoly> images{x * M[0] + y * M[1] + one * t[0], x * M[2] + y * M[3] + one * t[1], p};
    MultiPoly den = one * M[0] + p * M[1], num = one * M[2] + p * M[3];
    auto coeffs = w.coefficients();
    MultiPoly G(V, r);
    const int k = w.k();
    for (int j = 0; j <= k; ++j) {
        MultiPoly f = coeffs[static_cast<std::size_t>(j)].compose(images);
        if (f.is_zero()) continue;
        G += f * num.pow(static_cast<unsigned>(j)) * den.pow(static_cast<unsigned>(k - j));
    }
    return AffineWeb::make(G, opts);
}

AffineWeb superpose(const AffineWeb& a, const AffineWeb& b) { return AffineWeb::make(a.F() * b.F()); }

}  // namespace webcurv
