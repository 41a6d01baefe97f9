#include "foliation_analysis.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace webcurv {

namespace {

using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

MultiPoly pvar(std::size_t i, const Ring& r) { return MultiPoly::variable(proj_plane_vars(), i, r); }

cplx horner(const std::vector<cplx>& a, cplx z) {
    cplx r = 0;
    for (std::size_t j = a.size(); j-- > 0;) r = r * z + a[j];
    return r;
}

cplx horner_derivative(const std::vector<cplx>& a, cplx z) {
    cplx r = 0;
    for (std::size_t j = a.size(); j-- > 1;) r = r * z + static_cast<real>(j) * a[j];
    return r;
}

std::vector<cplx> numeric_roots(std::vector<cplx> a) {
    while (!a.empty() && a.back() == cplx(0)) a.pop_back();
    if (a.size() < 2) return {};
    const int n = static_cast<int>(a.size()) - 1;
    Mat C = Mat::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -a[static_cast<std::size_t>(i)] / a.back();
    Eigen::ComplexEigenSolver<Mat> es(C, false);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::Numeric, "companion eigenvalue solve failed");
    std::vector<cplx> out;
    for (int i = 0; i < n; ++i) {
        cplx z = es.eigenvalues()(i);
        for (int it = 0; it < 4; ++it) {
            cplx d = horner_derivative(a, z);
            if (d == cplx(0)) break;
            cplx w = z - horner(a, z) / d;
            if (std::abs(horner(a, w)) > std::abs(horner(a, z))) break;
            z = w;
        }
        out.push_back(z);
    }
    std::sort(out.begin(), out.end(),
              [](cplx u, cplx v) { return u.real() != v.real() ? u.real() < v.real() : u.imag() < v.imag(); });
    return out;
}

std::vector<cplx> numeric_coefficients(const MultiPoly& f, std::size_t var) {
    std::vector<cplx> a;
    for (const auto& c : f.coefficients_in(var)) a.push_back(c.constant_term().to_complex());
    return a;
}

// sum |c| |v|^e: the size of the terms of f at v
real abs_eval(const MultiPoly& f, std::span<const cplx> v) {
    real s = 0;
    for (const auto& [m, c] : f.terms()) {
        real t = c.magnitude();
        for (std::size_t i = 0; i < f.nvars(); ++i) t *= std::pow(std::abs(v[i]), exponent(m, i));
        s += t;
    }
    return s;
}

// n = s^2 * q with q square-free (trial division; a large leftover cofactor is kept whole)
std::pair<mpz_class, mpz_class> square_split(mpz_class n) {
    mpz_class s = 1, q = 1;
    for (unsigned long p = 2; p < 100000 && p * p <= n; ++p) {
        while (n % (p * p) == 0) {
            n /= p * p;
            s *= p;
        }
        if (n % p == 0) {
            n /= p;
            q *= p;
        }
    }
    mpz_class r = sqrt(n);
    if (r * r == n)
        s *= r;
    else
        q *= n;
    return {s, q};
}

std::optional<Scalar> verify_root(const MultiPoly& f, std::size_t var, const Scalar& c) {
    try {
        Ring r = join(f.ring(), c.ring());
        if (f.to_ring(r).substitute(var, c.to_ring(r)).is_zero()) return c;
    } catch (const Error&) {
    }
    return std::nullopt;
}

// a + b sqrt(D) from a and b^2 D, both as floats
std::optional<Scalar> quad_candidate(real a, real b2D, real sign, long fixed_d = 0) {
    auto qa = rationalize(a), qe = rationalize(b2D);
    if (!qa || !qe || sgn(*qe) == 0) return std::nullopt;
    mpz_class num = abs(qe->get_num()), den = qe->get_den();
    long D = fixed_d;
    mpq_class b2;
    if (D == 0) {
        auto [s, q] = square_split(num * den);
        if (!q.fits_slong_p() || (q == 1 && sgn(*qe) > 0)) return std::nullopt;
        D = sgn(*qe) > 0 ? q.get_si() : -q.get_si();
    }
    b2 = *qe / mpq_class(D);
    b2.canonicalize();
    if (sgn(b2) <= 0) return std::nullopt;
    mpz_class rn = sqrt(b2.get_num()), rd = sqrt(b2.get_den());
    if (rn * rn != b2.get_num() || rd * rd != b2.get_den()) return std::nullopt;
    mpq_class b(rn, rd);
    b.canonicalize();
    if (sign < 0) b = -b;
    try {
        return Scalar::quad(*qa, b, D);
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::optional<Scalar> recognize(const MultiPoly& f, std::size_t var, cplx r, const std::vector<cplx>& partners) {
    const real tiny = 1e-12L * std::max(real(1), std::abs(r));
    std::vector<Scalar> cand;
    if (std::abs(r.imag()) <= tiny)
        if (auto q = rationalize(r.real())) cand.emplace_back(*q);
    Ring base = f.ring();
    if (base.kind == RingKind::QuadExt && base.d < 0) {
        real s = std::sqrt(static_cast<real>(-base.d));
        if (auto c = quad_candidate(r.real(), r.imag() * r.imag() / (s * s) * base.d, r.imag(), base.d))
            cand.push_back(*c);
    } else if (std::abs(r.imag()) > tiny) {
        if (auto c = quad_candidate(r.real(), -r.imag() * r.imag(), r.imag())) cand.push_back(*c);
    } else {
        // real irrational root: a + b sqrt(D) paired with its Galois conjugate a - b sqrt(D)
        for (cplx s : partners) {
            if (std::abs(s.imag()) > 1e-12L * std::max(real(1), std::abs(s)) || std::abs(s - r) <= tiny) continue;
            real a = (r.real() + s.real()) / 2, h = (r.real() - s.real()) / 2;
            long fixed = base.kind == RingKind::QuadExt ? base.d : 0;
            if (auto c = quad_candidate(a, h * h, h, fixed)) cand.push_back(*c);
        }
    }
    for (const auto& c : cand) {
        if (std::abs(c.to_complex() - r) > 1e-9L * std::max(real(1), std::abs(r))) continue;
        if (auto v = verify_root(f, var, c)) return v;
    }
    return std::nullopt;
}

// The point as a full coordinate vector over a ring.
std::array<Scalar, 3> exact_coords(const ProjPoint& s) { return *s.exact; }

ProjPoint make_point(std::array<cplx, 3> v, std::optional<std::array<Scalar, 3>> e) {
    ProjPoint p;
    p.value = v;
    p.exact = std::move(e);
    return p;
}

std::size_t chart_index(const ProjPoint& s) {
    if (s.exact) {
        if (!(*s.exact)[2].is_zero()) return 2;
        if (!(*s.exact)[0].is_zero()) return 0;
        return 1;
    }
    if (std::abs(s.value[2]) > 1e-12L) return 2;
    if (std::abs(s.value[0]) > 1e-12L) return 0;
    return 1;
}

// The affine field in chart var i = 1, as polynomials in (x,y,z) with var i absent.
std::pair<MultiPoly, MultiPoly> chart_field(const Foliation& f, std::size_t i) {
    const auto& X = f.homogeneous_field();
    Ring r = f.ring();
    std::size_t j = i == 0 ? 1 : 0, k = i == 2 ? 1 : 2;
    MultiPoly A = X[j] - pvar(j, r) * X[i], B = X[k] - pvar(k, r) * X[i];
    return {A.substitute(i, Scalar::one(r)), B.substitute(i, Scalar::one(r))};
}

// dedupe by value
void push_unique(std::vector<ProjPoint>& pts, ProjPoint p) {
    for (const auto& q : pts) {
        real d = 0;
        for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(q.value[i] - p.value[i]));
        if (d < 1e-8L * (1 + std::abs(p.value[0]) + std::abs(p.value[1]))) return;
    }
    pts.push_back(std::move(p));
}

real field_residual(const MultiPoly& A, const MultiPoly& B, std::span<const cplx> v) {
    real sa = abs_eval(A, v), sb = abs_eval(B, v);
    real ra = sa > 0 ? std::abs(A.eval(v)) / sa : 0, rb = sb > 0 ? std::abs(B.eval(v)) / sb : 0;
    return std::max(ra, rb);
}

// polish (x,y) on A = B = 0 in vars (x,y,z) at z = 1, keeping only improving steps
void newton_polish(const MultiPoly& A, const MultiPoly& B, cplx& x, cplx& y) {
    MultiPoly Ax = A.derivative(0), Ay = A.derivative(1), Bx = B.derivative(0), By = B.derivative(1);
    for (int it = 0; it < 6; ++it) {
        std::array<cplx, 3> v{x, y, 1};
        cplx a = A.eval(std::span<const cplx>(v)), b = B.eval(std::span<const cplx>(v));
        cplx j00 = Ax.eval(std::span<const cplx>(v)), j01 = Ay.eval(std::span<const cplx>(v));
        cplx j10 = Bx.eval(std::span<const cplx>(v)), j11 = By.eval(std::span<const cplx>(v));
        cplx det = j00 * j11 - j01 * j10;
        if (std::abs(det) == 0) return;
        cplx nx = x - (j11 * a - j01 * b) / det, ny = y - (j00 * b - j10 * a) / det;
        std::array<cplx, 3> w{nx, ny, 1};
        if (field_residual(A, B, w) >= field_residual(A, B, v)) return;
        x = nx;
        y = ny;
    }
}

}  // namespace

std::optional<mpq_class> rationalize(real v, real rel_tol, long max_den) {
    if (!std::isfinite(v)) return std::nullopt;
    const real target = rel_tol * std::max(real(1), std::abs(v));
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    real x = v;
    for (int it = 0; it < 64; ++it) {
        real a = std::floor(x);
        if (std::abs(a) > 1e18L) return std::nullopt;
        mpz_class ai(static_cast<long>(a));
        mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) return std::nullopt;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        real num = static_cast<real>(p1.get_d()), den = static_cast<real>(q1.get_d());
        if (std::abs(v - num / den) <= target) {
            mpq_class q(p1, q1);
            q.canonicalize();
            return q;
        }
        real fr = x - a;
        if (fr == 0) return std::nullopt;
        x = 1 / fr;
    }
    return std::nullopt;
}

std::vector<Root> univariate_roots(const MultiPoly& f, std::size_t var) {
    if (f.is_zero()) throw Error(ErrorCode::Degenerate, "roots of the zero polynomial");
    for (std::size_t i = 0; i < f.nvars(); ++i)
        if (i != var && f.involves(i)) throw Error(ErrorCode::InvalidArgument, "univariate_roots: extra variables");
    if (f.is_constant()) return {};
    const bool exact = f.ring().exact();
    MultiPoly g = exact ? squarefree_part(f) : f;
    std::vector<cplx> roots = numeric_roots(numeric_coefficients(g, var));
    std::vector<cplx> partners = roots;
    if (exact && f.ring().kind == RingKind::QuadExt && f.ring().d > 0)
        partners = numeric_roots(numeric_coefficients(g.map_coefficients([](const Scalar& c) { return c.conjugate(); }), var));
    std::vector<Root> out;
    for (cplx r : roots) {
        Root root{r, std::nullopt};
        if (exact) root.exact = recognize(g, var, r, partners);
        if (root.exact) root.value = root.exact->to_complex();
        out.push_back(std::move(root));
    }
    return out;
}

std::string ProjPoint::to_string() const {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < 3; ++i) {
        if (i) os << " : ";
        if (exact) {
            const Scalar& c = (*exact)[static_cast<std::size_t>(i)];
            os << (c.ring().kind == RingKind::QuadExt && sgn(c.irr()) == 0 ? c.rat().get_str() : c.to_string());
        } else {
            cplx z = value[static_cast<std::size_t>(i)];
            os.precision(15);
            os << static_cast<double>(z.real());
            if (z.imag() != 0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(static_cast<double>(z.imag())) << "*I";
        }
    }
    os << ")";
    return os.str();
}

MultiPoly inflection_divisor(const Foliation& f) {
    const auto& X = f.homogeneous_field();
    Ring r = f.ring();
    auto apply = [&](const MultiPoly& g) {
        MultiPoly s(proj_plane_vars(), r);
        for (std::size_t i = 0; i < 3; ++i) s += X[i] * g.derivative(i);
        return s;
    };
    std::vector<std::vector<MultiPoly>> m{{pvar(0, r), pvar(1, r), pvar(2, r)},
                                          {X[0], X[1], X[2]},
                                          {apply(X[0]), apply(X[1]), apply(X[2])}};
    MultiPoly I = bareiss_determinant(m, proj_plane_vars(), r);
    if (I.is_zero()) throw Error(ErrorCode::Degenerate, "inflection determinant vanishes: the foliation is a pencil of lines");
    return I;
}

bool invariant_line_check(const Foliation& f, const LinearForm& l) {
    if (!l.exact() || !f.ring().exact()) return invariant_line_check_numeric(f, l);
    Ring r = join(f.ring(), l.ring());
    const auto& X = f.homogeneous_field();
    MultiPoly S(proj_plane_vars(), r);
    for (std::size_t i = 0; i < 3; ++i) S += X[i].to_ring(r) * l.c[i];
    if (S.is_zero()) return true;
    return divide_exact(S, l.as_poly(proj_plane_vars(), r)).has_value();
}

bool invariant_line_check_numeric(const Foliation& f, const LinearForm& l, real tol) {
    std::array<cplx, 3> c{l.c[0].to_complex(), l.c[1].to_complex(), l.c[2].to_complex()};
    std::size_t i = 0;
    for (std::size_t n = 1; n < 3; ++n)
        if (std::abs(c[n]) > std::abs(c[i])) i = n;
    std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    std::array<cplx, 3> vj{}, vk{};
    vj[j] = 1;
    vj[i] = -c[j] / c[i];
    vk[k] = 1;
    vk[i] = -c[k] / c[i];
    const auto& X = f.homogeneous_field();
    for (int s = 0; s < f.degree() + 2; ++s) {
        cplx tau(0.37L + 0.29L * s, 0.11L * s - 0.2L);
        std::array<cplx, 3> P;
        for (int n = 0; n < 3; ++n) P[n] = vj[n] + tau * vk[n];
        cplx v = 0;
        real scale = 0;
        for (int n = 0; n < 3; ++n) {
            v += c[n] * X[n].eval(std::span<const cplx>(P));
            scale += std::abs(c[n]) * abs_eval(X[n], P);
        }
        if (std::abs(v) > tol * scale) return false;
    }
    return true;
}

namespace {

bool same_line(const LinearForm& a, const LinearForm& b) {
    if (a.exact() && b.exact()) {
        try {
            Ring r = join(a.ring(), b.ring());
            for (int i = 0; i < 3; ++i)
                if (!(a.c[i].to_ring(r) == b.c[i].to_ring(r))) return false;
            return true;
        } catch (const Error&) {
            return false;
        }
    }
    for (int i = 0; i < 3; ++i)
        if (std::abs(a.c[i].to_complex() - b.c[i].to_complex()) > 1e-8L * (1 + std::abs(b.c[i].to_complex())))
            return false;
    return true;
}

void add_line(LineSearch& out, LinearForm l) {
    for (const auto& m : out.lines)
        if (same_line(m, l)) return;
    out.lines.push_back(std::move(l));
}

Scalar from_root(const Root& r) { return r.exact ? *r.exact : Scalar::complex(r.value); }

// Common roots in v of the polynomials cs (in vars x,u,v; free of x) after setting u = u0.
std::vector<Root> common_v_roots(const std::vector<MultiPoly>& cs, const Root& u0, bool& infinite) {
    infinite = false;
    if (u0.exact) {
        std::vector<MultiPoly> sub;
        Ring r;
        try {
            r = join(cs.front().ring(), u0.exact->ring());
        } catch (const Error&) {
            return common_v_roots(cs, Root{u0.value, std::nullopt}, infinite);
        }
        MultiPoly G(cs.front().vars(), r);
        for (const auto& c : cs) {
            MultiPoly s = c.to_ring(r).substitute(1, u0.exact->to_ring(r));
            G = G.is_zero() ? s : (s.is_zero() ? G : gcd(G, s));
        }
        if (G.is_zero()) {
            infinite = true;
            return {};
        }
        return univariate_roots(G, 2);
    }
    std::vector<std::vector<cplx>> polys;
    for (const auto& c : cs) {
        std::vector<cplx> a;
        for (const auto& cv : c.coefficients_in(2)) {
            std::array<cplx, 3> pt{0, u0.value, 0};
            a.push_back(cv.eval(std::span<const cplx>(pt)));
        }
        real mag = 0;
        for (auto z : a) mag = std::max(mag, std::abs(z));
        // drop coefficients that vanish up to rounding
        std::array<cplx, 3> pt{0, u0.value, 0};
        std::vector<cplx> trimmed = a;
        auto cvs = c.coefficients_in(2);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (std::abs(a[i]) <= 1e-10L * std::max(real(1), abs_eval(cvs[i], pt))) trimmed[i] = 0;
        while (!trimmed.empty() && trimmed.back() == cplx(0)) trimmed.pop_back();
        if (!trimmed.empty()) polys.push_back(trimmed);
    }
    if (polys.empty()) {
        infinite = true;
        return {};
    }
    auto base = std::min_element(polys.begin(), polys.end(), [](auto& a, auto& b) { return a.size() < b.size(); });
    std::vector<Root> out;
    for (cplx v : numeric_roots(*base)) {
        bool ok = true;
        for (const auto& p : polys) {
            real s = 0, pw = 1;
            for (auto z : p) s += std::abs(z) * pw, pw *= std::abs(v);
            if (std::abs(horner(p, v)) > 1e-8L * s) ok = false;
        }
        if (ok) out.push_back({v, std::nullopt});
    }
    return out;
}

// Lines y = u x + v with E(x; u, v) == 0 identically, E in vars (x,u,v); and verticals x = c with V(c) = 0.
LineSearch line_candidates(const MultiPoly& E, const MultiPoly& V, bool all_verticals,
                           const std::function<bool(const LinearForm&)>& accept) {
    LineSearch out;
    Ring r = E.ring();
    std::vector<MultiPoly> cs;
    for (const auto& c : E.coefficients_in(0))
        if (!c.is_zero()) cs.push_back(c);
    if (cs.empty()) {
        out.complete = false;
        out.note = "every non-vertical line qualifies";
        return out;
    }
    bool trivial = false;
    for (const auto& c : cs)
        if (c.is_constant()) trivial = true;
    if (!trivial) {
        std::mt19937_64 rng(0x11e5);
        std::uniform_int_distribution<int> w(1, 23);
        auto combo = [&]() {
            MultiPoly g(E.vars(), r);
            for (const auto& c : cs) g += c * Scalar(w(rng));
            return g;
        };
        MultiPoly g1 = combo(), g2 = combo(), g3 = combo();
        MultiPoly R;
        if (!g1.involves(2)) {
            R = g1;
            for (const auto& c : cs) R = gcd(R, c);
            if (R.involves(2) || !R.is_constant()) {
                out.complete = false;
                out.note = "elimination degenerate: a family of lines";
            }
            R = MultiPoly(E.vars(), r);
        } else {
            R = gcd(resultant(g1, g2, 2), resultant(g1, g3, 2));
        }
        if (R.is_zero() && out.complete) {
            out.complete = false;
            out.note = "elimination degenerate: resultants vanish";
        }
        if (!R.is_zero() && !R.is_constant())
            for (const Root& u : univariate_roots(R, 1)) {
                bool inf = false;
                for (const Root& v : common_v_roots(cs, u, inf)) {
                    Scalar su = from_root(u), sv = from_root(v);
                    LinearForm l(su, Scalar(-1).to_ring(su.ring()), sv);
                    if (accept(l)) add_line(out, l);
                }
                if (inf) {
                    out.complete = false;
                    out.note = "elimination degenerate: a family of lines";
                }
            }
    }
    if (all_verticals) {
        out.complete = false;
        out.note = "every vertical line qualifies";
    } else if (!V.is_zero() && !V.is_constant()) {
        for (const Root& c : univariate_roots(V, 0)) {
            Scalar sc = from_root(c);
            LinearForm l(Scalar::one(sc.ring()), Scalar::zero(sc.ring()), -sc);
            if (accept(l)) add_line(out, l);
        }
    }
    std::stable_partition(out.lines.begin(), out.lines.end(), [](const LinearForm& l) { return l.exact(); });
    return out;
}

const std::vector<std::string>& xuv() {
    static const std::vector<std::string> v{"x", "u", "v"};
    return v;
}

// p(x, y) in plane-like vars (first two) evaluated on y = u x + v, in vars (x,u,v)
MultiPoly on_line(const MultiPoly& p) {
    Ring r = p.ring();
    MultiPoly x = MultiPoly::variable(xuv(), 0, r), u = MultiPoly::variable(xuv(), 1, r),
              v = MultiPoly::variable(xuv(), 2, r);
    std::vector<MultiPoly> images{x, u * x + v};
    for (std::size_t i = 2; i < p.nvars(); ++i) images.push_back(MultiPoly::constant(xuv(), Scalar::one(r)));
    return p.compose(images);
}

// gcd of the y-coefficients of p(x,y), as a polynomial in the vars of xuv (x only)
MultiPoly vertical_gcd(const MultiPoly& p, bool& all) {
    all = p.is_zero();
    MultiPoly g(xuv(), p.ring());
    if (all) return g;
    for (const auto& c : p.coefficients_in(1)) {
        if (c.is_zero()) continue;
        MultiPoly cx = on_line(c);  // free of y, so this only renames
        g = g.is_zero() ? cx : gcd(g, cx);
    }
    return g;
}

}  // namespace

LineSearch find_invariant_lines(const Foliation& f) {
    if (!f.ring().exact()) throw Error(ErrorCode::InvalidArgument, "find_invariant_lines needs an exact ring");
    if (f.degree() > 7) throw Error(ErrorCode::Limit, "invariant-line elimination is capped at degree 7");
    const MultiPoly &A = f.A(), &B = f.B();
    MultiPoly u = MultiPoly::variable(xuv(), 1, f.ring());
    MultiPoly E = on_line(B) - u * on_line(A);
    bool all_vert = false;
    MultiPoly V = vertical_gcd(A, all_vert);
    auto accept = [&](const LinearForm& l) { return invariant_line_check(f, l); };
    LineSearch out = line_candidates(E, V, all_vert, accept);
    LinearForm inf(Scalar(0), Scalar(0), Scalar(1));
    if (invariant_line_check(f, inf)) add_line(out, inf);
    std::stable_partition(out.lines.begin(), out.lines.end(), [](const LinearForm& l) { return l.exact(); });
    if (static_cast<int>(out.lines.size()) > 3 * f.degree()) {
        out.complete = false;
        out.note = "more than 3d invariant lines";
    }
    return out;
}

LineSearch linear_factors(const MultiPoly& P0) {
    if (!P0.ring().exact()) throw Error(ErrorCode::InvalidArgument, "linear_factors needs an exact ring");
    if (P0.is_zero()) throw Error(ErrorCode::Domain, "linear factors of the zero polynomial");
    bool homogeneous = P0.nvars() == 3;
    if (!homogeneous && P0.nvars() != 2) throw Error(ErrorCode::InvalidArgument, "linear_factors needs 2 or 3 variables");
    MultiPoly P = homogeneous ? P0.substitute(2, Scalar::one(P0.ring())) : P0;
    auto accept = [&](const LinearForm& l) {
        if (l.exact()) return linear_factor_multiplicity(P0, l) > 0;
        std::vector<std::string> vars = P0.vars();
        MultiPoly lp = l.as_poly(vars, Ring::complex());
        return divide_exact(P0.to_ring(Ring::complex()), lp).has_value();
    };
    bool all_vert = false;
    MultiPoly V = vertical_gcd(P, all_vert);
    LineSearch out = line_candidates(on_line(P), V, all_vert, accept);
    if (homogeneous) {
        LinearForm inf(Scalar(0), Scalar(0), Scalar(1));
        if (linear_factor_multiplicity(P0, inf) > 0) add_line(out, inf);
    }
    std::stable_partition(out.lines.begin(), out.lines.end(), [](const LinearForm& l) { return l.exact(); });
    return out;
}

namespace {

// Product of float lines, with coefficients rounded into ring r when they are rational there.
std::optional<MultiPoly> recognized_product(const std::vector<LinearForm>& ls, const Ring& r) {
    MultiPoly p = MultiPoly::constant(proj_plane_vars(), Scalar::one(Ring::complex()));
    for (const auto& l : ls) p = p * l.as_poly(proj_plane_vars(), Ring::complex());
    cplx lead = p.leading_coefficient().to_complex();
    MultiPoly out(proj_plane_vars(), r);
    for (const auto& [m, c] : p.terms()) {
        cplx z = c.to_complex() / lead;
        if (std::abs(z) < 1e-12L) continue;
        std::optional<Scalar> s;
        if (std::abs(z.imag()) < 1e-12L) {
            if (auto q = rationalize(z.real())) s = Scalar(*q);
        } else if (r.kind == RingKind::QuadExt && r.d < 0) {
            real sq = std::sqrt(static_cast<real>(-r.d));
            auto a = rationalize(z.real()), b = rationalize(z.imag() / sq);
            if (a && b) s = Scalar::quad(*a, *b, r.d);
        }
        if (!s) return std::nullopt;
        out.add_term(m, s->to_ring(join(r, s->ring())));
    }
    return out;
}

}  // namespace

ConvexityReport convexity_report(const Foliation& f) {
    ConvexityReport rep;
    MultiPoly I = inflection_divisor(f);
    rep.inflection_degree = I.degree();
    LineSearch ls = find_invariant_lines(f);
    rep.complete = ls.complete;
    MultiPoly cof = I;
    std::vector<LinearForm> loose;
    for (const auto& l : ls.lines) {
        if (!l.exact()) {
            loose.push_back(l);
            continue;
        }
        try {
            Ring r = join(cof.ring(), l.ring());
            MultiPoly L = l.as_poly(proj_plane_vars(), r);
            cof = cof.to_ring(r);
            int m = 0;
            while (auto q = divide_exact(cof, L)) {
                cof = std::move(*q);
                ++m;
            }
            rep.factors.emplace_back(l, m);
        } catch (const Error&) {
            loose.push_back(l);
        }
    }
    if (!loose.empty()) {
        int m = 0;
        if (auto P = recognized_product(loose, cof.ring())) {
            MultiPoly Pr = P->to_ring(join(cof.ring(), P->ring()));
            cof = cof.to_ring(Pr.ring());
            while (auto q = divide_exact(cof, Pr)) {
                cof = std::move(*q);
                ++m;
            }
        } else {
            rep.complete = false;
        }
        for (const auto& l : loose) rep.factors.emplace_back(l, m);
    }
    rep.cofactor = cof;
    bool all_divide = std::all_of(rep.factors.begin(), rep.factors.end(), [](auto& p) { return p.second > 0; });
    rep.convex = cof.is_constant() && all_divide;
    if (rep.convex)
        rep.reduced = std::all_of(rep.factors.begin(), rep.factors.end(), [](auto& p) { return p.second == 1; });
    else
        rep.reduced = is_squarefree(I);
    return rep;
}

std::vector<ProjPoint> singular_points(const Foliation& f) {
    Ring r = f.ring();
    if (!r.exact()) throw Error(ErrorCode::InvalidArgument, "singular_points needs an exact ring");
    const std::size_t Y = 1;
    std::vector<ProjPoint> pts;
    auto positive_dim = [] { return Error(ErrorCode::Degenerate, "singular locus is positive-dimensional"); };

    // affine chart z = 1, as polynomials in (x,y,z)
    auto [A, B] = chart_field(f, 2);
    if (A.is_zero() || B.is_zero()) {
        if (!(A.is_zero() ? B : A).is_constant()) throw positive_dim();
    } else {
        MultiPoly R = resultant(A, B, Y);
        if (R.is_zero()) throw positive_dim();
        for (const Root& xr : univariate_roots(R, 0)) {
            if (xr.exact) {
                Ring j = join(r, xr.exact->ring());
                Scalar x0 = xr.exact->to_ring(j);
                MultiPoly Ax = A.to_ring(j).substitute(0, x0), Bx = B.to_ring(j).substitute(0, x0);
                MultiPoly G = Ax.is_zero() ? Bx : (Bx.is_zero() ? Ax : gcd(Ax, Bx));
                if (G.is_zero()) throw positive_dim();
                for (const Root& yr : univariate_roots(G, Y)) {
                    std::optional<std::array<Scalar, 3>> e;
                    if (yr.exact) {
                        Ring jj = join(j, yr.exact->ring());
                        e = std::array<Scalar, 3>{x0.to_ring(jj), yr.exact->to_ring(jj), Scalar::one(jj)};
                    }
                    cplx xv = xr.value, yv = yr.value;
                    if (!e) newton_polish(A, B, xv, yv);
                    ProjPoint p = make_point({xv, yv, 1}, e);
                    p.residual = field_residual(A, B, p.value);
                    push_unique(pts, p);
                }
                continue;
            }
            // float x: roots of the lower-degree restriction, filtered by the other
            std::vector<cplx> ay, by;
            std::array<cplx, 3> pt{xr.value, 0, 1};
            for (const auto& c : A.coefficients_in(Y)) ay.push_back(c.eval(std::span<const cplx>(pt)));
            for (const auto& c : B.coefficients_in(Y)) by.push_back(c.eval(std::span<const cplx>(pt)));
            auto trim = [&](std::vector<cplx>& a, const MultiPoly& P) {
                auto cs = P.coefficients_in(Y);
                for (std::size_t i = 0; i < a.size(); ++i)
                    if (std::abs(a[i]) <= 1e-10L * std::max(real(1), abs_eval(cs[i], pt))) a[i] = 0;
                while (!a.empty() && a.back() == cplx(0)) a.pop_back();
            };
            trim(ay, A);
            trim(by, B);
            if (ay.empty() && by.empty()) throw positive_dim();
            bool useA = !ay.empty() && (by.empty() || ay.size() <= by.size());
            for (cplx y : numeric_roots(useA ? ay : by)) {
                cplx xv = xr.value, yv = y;
                newton_polish(A, B, xv, yv);
                ProjPoint p = make_point({xv, yv, 1}, std::nullopt);
                p.residual = field_residual(A, B, p.value);
                if (p.residual < 1e-9L) push_unique(pts, p);
            }
        }
    }

    // line at infinity: (1 : t : 0) and (0 : 1 : 0)
    const auto& X = f.homogeneous_field();
    auto at = [&](const MultiPoly& p) { return p.substitute(0, Scalar::one(r)).substitute(2, Scalar::zero(r)); };
    MultiPoly f1 = at(X[2]), f2 = at(X[1] - pvar(1, r) * X[0]);
    if (f1.is_zero() && f2.is_zero()) throw positive_dim();
    MultiPoly G = f1.is_zero() ? f2 : (f2.is_zero() ? f1 : gcd(f1, f2));
    for (const Root& t : univariate_roots(G, Y)) {
        std::optional<std::array<Scalar, 3>> e;
        if (t.exact) {
            Ring j = join(r, t.exact->ring());
            e = std::array<Scalar, 3>{Scalar::one(j), t.exact->to_ring(j), Scalar::zero(j)};
        }
        push_unique(pts, make_point({1, t.value, 0}, e));
    }
    std::array<Scalar, 3> e010{Scalar::zero(r), Scalar::one(r), Scalar::zero(r)};
    if (X[2].eval(std::span<const Scalar>(e010)).is_zero() && X[0].eval(std::span<const Scalar>(e010)).is_zero())
        push_unique(pts, make_point({0, 1, 0}, e010));
    return pts;
}

std::string to_string(LinearClass c) {
    switch (c) {
        case LinearClass::NondegenerateDiagonalizable: return "nondegenerate-diagonalizable";
        case LinearClass::Radial: return "radial";
        case LinearClass::Nilpotent: return "nilpotent";
        case LinearClass::Zero: return "zero";
        case LinearClass::Other: return "other";
    }
    return "other";
}

namespace {

struct Local {
    std::size_t i, j, k;
    MultiPoly A, B;
    Scalar sj, sk;  // chart coordinates of the point
    Ring ring;
};

Local localize(const Foliation& f, const ProjPoint& s) {
    Local L;
    L.i = chart_index(s);
    L.j = L.i == 0 ? 1 : 0;
    L.k = L.i == 2 ? 1 : 2;
    auto [A, B] = chart_field(f, L.i);
    if (s.exact) {
        auto e = exact_coords(s);
        L.ring = join(f.ring(), e[0].ring());
        Scalar inv = e[L.i].to_ring(L.ring).inverse();
        L.sj = e[L.j].to_ring(L.ring) * inv;
        L.sk = e[L.k].to_ring(L.ring) * inv;
    } else {
        L.ring = Ring::complex();
        L.sj = Scalar::complex(s.value[L.j] / s.value[L.i]);
        L.sk = Scalar::complex(s.value[L.k] / s.value[L.i]);
    }
    L.A = A.to_ring(L.ring);
    L.B = B.to_ring(L.ring);
    return L;
}

// the local field composed with x_j = s_j + a, x_k = s_k + b, in vars V
std::pair<MultiPoly, MultiPoly> translated(const Local& L, const std::vector<std::string>& V, const MultiPoly& a,
                                           const MultiPoly& b) {
    std::vector<MultiPoly> images(3, MultiPoly::constant(V, Scalar::one(L.ring)));
    images[L.j] = MultiPoly::constant(V, L.sj) + a;
    images[L.k] = MultiPoly::constant(V, L.sk) + b;
    return {L.A.compose(images), L.B.compose(images)};
}

}  // namespace

SingularityRecord classify_singularity(const Foliation& f, const ProjPoint& s) {
    SingularityRecord rec;
    rec.location = s;
    rec.exact = s.exact.has_value();
    Local L = localize(f, s);
    const std::vector<std::string> V{"t", "m"};
    MultiPoly t = MultiPoly::variable(V, 0, L.ring), m = MultiPoly::variable(V, 1, L.ring);
    auto [A, B] = translated(L, V, t, t * m);
    MultiPoly Phi = m * A - B;
    real scale = Phi.max_abs_coefficient();
    auto negligible = [&](const Scalar& c) { return rec.exact ? c.is_zero() : c.magnitude() <= 1e-9L * scale; };

    if (!A.constant_term().is_zero() && !negligible(A.constant_term()))
        throw Error(ErrorCode::Domain, "classify_singularity: point is not singular");
    rec.nu = 1 << 20;
    for (const auto& [mono, c] : Phi.terms())
        if (!negligible(c)) rec.nu = std::min(rec.nu, exponent(mono, 0));
    if (rec.nu == 1 << 20) throw Error(ErrorCode::Degenerate, "every line through the point is invariant");

    // linear part from the coefficients of t in A(t, t m) and B(t, t m)
    Scalar J[2][2];
    for (int r0 = 0; r0 < 2; ++r0) {
        const MultiPoly& P = r0 == 0 ? A : B;
        J[r0][0] = P.coefficient(var_monomial(0, 1));
        J[r0][1] = P.coefficient(var_monomial(0, 1) | var_monomial(1, 1));
    }
    auto isz = [&](const Scalar& c, real tol_scale) {
        return rec.exact ? c.is_zero() : c.magnitude() <= 1e-9L * tol_scale;
    };
    real js = 0;
    for (auto& row : J)
        for (auto& e : row) js = std::max(js, e.magnitude());
    if (!rec.exact && js <= 1e-9L * scale) js = 0;
    if (rec.exact ? (J[0][0].is_zero() && J[0][1].is_zero() && J[1][0].is_zero() && J[1][1].is_zero()) : js == 0) {
        rec.linear_class = LinearClass::Zero;
    } else if (isz(J[0][1], js) && isz(J[1][0], js) && isz(J[0][0] - J[1][1], js)) {
        rec.linear_class = LinearClass::Radial;
    } else {
        Scalar tr = J[0][0] + J[1][1], det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (isz(det, js * js))
            rec.linear_class = isz(tr, js) ? LinearClass::Nilpotent : LinearClass::Other;
        else
            rec.linear_class = isz(tr * tr - Scalar(4) * det, js * js) ? LinearClass::Other
                                                                      : LinearClass::NondegenerateDiagonalizable;
    }
    if (rec.linear_class == LinearClass::Radial) {
        if (rec.nu < 2) throw Error(ErrorCode::Numeric, "radial point with nu < 2");
        rec.radial_order = rec.nu - 1;
    }
    return rec;
}

int radial_nu_by_jets(const Foliation& f, const ProjPoint& s) {
    if (!s.exact) throw Error(ErrorCode::InvalidArgument, "radial_nu_by_jets needs an exact point");
    Local L = localize(f, s);
    const std::vector<std::string> V{"U", "W"};
    MultiPoly U = MultiPoly::variable(V, 0, L.ring), W = MultiPoly::variable(V, 1, L.ring);
    auto [A, B] = translated(L, V, U, W);
    MultiPoly wedge = U * B - W * A;  // sum over j of U B_j - W A_j, homogeneous of degree j + 1
    if (wedge.is_zero()) throw Error(ErrorCode::Degenerate, "every line through the point is invariant");
    int low = 1 << 20;
    for (const auto& [m, c] : wedge.terms()) low = std::min(low, total_degree(m));
    return low - 1;
}

RadialCensus radial_census(const Foliation& f) {
    RadialCensus c;
    for (const auto& p : singular_points(f)) {
        SingularityRecord rec = classify_singularity(f, p);
        if (rec.radial_order) {
            ++c.counts[*rec.radial_order];
            ++c.total;
            c.weighted += *rec.radial_order;
        }
        c.records.push_back(std::move(rec));
    }
    const int d = f.degree();
    c.bound = (d + 2) * (d - 1);
    c.bound_ok = c.weighted <= c.bound;
    return c;
}

MultiPoly tangency_divisor(const Foliation& f, const Foliation& g) {
    Ring r = join(f.ring(), g.ring());
    const auto &X = f.homogeneous_field(), &Y = g.homogeneous_field();
    std::vector<std::vector<MultiPoly>> m{{pvar(0, r), pvar(1, r), pvar(2, r)},
                                          {X[0].to_ring(r), X[1].to_ring(r), X[2].to_ring(r)},
                                          {Y[0].to_ring(r), Y[1].to_ring(r), Y[2].to_ring(r)}};
    MultiPoly T = bareiss_determinant(m, proj_plane_vars(), r);
    if (T.is_zero()) throw Error(ErrorCode::Degenerate, "tangency divisor of identical foliations");
    return T;
}

LinearForm dual_line(const ProjPoint& s) {
    if (s.exact) {
        auto e = *s.exact;
        return LinearForm(e[0], e[2], -e[1]);
    }
    return LinearForm(Scalar::complex(s.value[0]), Scalar::complex(s.value[2]), Scalar::complex(-s.value[1]));
}

namespace {

real direction_sine(const Slope& a, const Slope& b) {
    cplx a0 = a.infinite ? 0 : 1, a1 = a.infinite ? 1 : a.value;
    cplx b0 = b.infinite ? 0 : 1, b1 = b.infinite ? 1 : b.value;
    real na = std::sqrt(std::norm(a0) + std::norm(a1)), nb = std::sqrt(std::norm(b0) + std::norm(b1));
    return std::abs(a0 * b1 - a1 * b0) / (na * nb);
}

}  // namespace

DeltaReport discriminant_component_report(const AffineWeb& w, int samples, std::uint64_t seed, real tol) {
    if (w.k() < 3) throw Error(ErrorCode::Domain, "discriminant_component_report needs k >= 3");
    if (!w.ring().exact()) throw Error(ErrorCode::InvalidArgument, "discriminant_component_report needs an exact ring");
    DeltaReport rep;
    rep.discriminant = discriminant(w);
    const MultiPoly& D = rep.discriminant;
    if (D.is_constant()) return rep;
    MultiPoly Dr = squarefree_part(D);
    LineSearch ls = linear_factors(Dr);

    struct Comp {
        std::optional<LinearForm> line;
        MultiPoly poly;  // (x,y)
    };
    std::vector<Comp> comps;
    MultiPoly cof = Dr;
    for (const auto& l : ls.lines) {
        Ring r = l.exact() ? join(cof.ring(), l.ring()) : Ring::complex();
        MultiPoly L = l.as_poly(plane_vars(), r);
        if (auto q = divide_exact(cof.to_ring(r), L)) cof = *q;
        comps.push_back({l, L});
    }
    if (!cof.is_constant()) comps.push_back({std::nullopt, cof});

    NumericWeb nw(w);
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const Comp& c = comps[ci];
        ComponentReport cr;
        cr.linear = c.line.has_value();
        cr.component = c.poly.to_string();
        try {
            cr.multiplicity = cr.linear ? linear_factor_multiplicity(D, *c.line) : factor_multiplicity(D, c.poly);
        } catch (const Error&) {
            cr.multiplicity = 0;
        }
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (ci + 1)));
        std::uniform_real_distribution<double> u(-2, 2);
        int attempts = 0;
        MultiPoly Nx = c.poly.derivative(0), Ny = c.poly.derivative(1);
        while (cr.samples < samples && attempts < 6 * samples) {
            ++attempts;
            cplx x, y;
            Slope tangent;
            if (cr.linear) {
                cplx a = c.line->c[0].to_complex(), b = c.line->c[1].to_complex(), k0 = c.line->c[2].to_complex();
                if (b != cplx(0)) {
                    x = u(rng);
                    y = -(a * x + k0) / b;
                    tangent = Slope{-a / b};
                } else {
                    x = -k0 / a;
                    y = u(rng);
                    tangent = Slope::inf();
                }
            } else {
                x = u(rng);
                std::vector<cplx> ay;
                std::array<cplx, 2> pt{x, 0};
                for (const auto& cy : c.poly.coefficients_in(1)) ay.push_back(cy.eval(std::span<const cplx>(pt)));
                auto ys = numeric_roots(ay);
                if (ys.empty()) continue;
                y = ys[rng() % ys.size()];
                std::array<cplx, 2> q{x, y};
                cplx gx = Nx.eval(std::span<const cplx>(q)), gy = Ny.eval(std::span<const cplx>(q));
                if (std::abs(gx) + std::abs(gy) == 0) continue;
                tangent = std::abs(gy) > 1e-12L * std::abs(gx) ? Slope{-gx / gy} : Slope::inf();
            }
            std::vector<cplx> a = nw.coefficients_at(x, y);
            real amax = 0;
            for (auto z : a) amax = std::max(amax, std::abs(z));
            if (std::abs(a.back()) < 1e-8L * amax) continue;  // a slope at infinity; resample
            std::vector<cplx> ps = numeric_roots(a);
            if (ps.size() != static_cast<std::size_t>(w.k())) continue;
            real big = 1;
            for (auto p : ps) big = std::max(big, std::abs(p));
            std::size_t bi = 0, bj = 1;
            real best = std::numeric_limits<real>::infinity();
            for (std::size_t i = 0; i < ps.size(); ++i)
                for (std::size_t j = i + 1; j < ps.size(); ++j)
                    if (std::abs(ps[i] - ps[j]) < best) {
                        best = std::abs(ps[i] - ps[j]);
                        bi = i;
                        bj = j;
                    }
            // a clean 2 + (k-2) splitting: one colliding pair, everything else apart
            real others = std::numeric_limits<real>::infinity();
            for (std::size_t i = 0; i < ps.size(); ++i)
                for (std::size_t j = i + 1; j < ps.size(); ++j)
                    if (!(i == bi && j == bj)) others = std::min(others, std::abs(ps[i] - ps[j]));
            if (best > 1e-6L * big || others < 1e-4L * big) continue;
            cplx p0 = (ps[bi] + ps[bj]) / real(2);
            std::vector<cplx> rest;
            for (std::size_t i = 0; i < ps.size(); ++i)
                if (i != bi && i != bj) rest.push_back(ps[i]);
            Slope beta = barycenter_slope(Slope{p0}, rest);
            cr.web2_margin = std::max(cr.web2_margin, direction_sine(Slope{p0}, tangent));
            cr.barycenter_margin = std::max(cr.barycenter_margin, direction_sine(beta, tangent));
            ++cr.samples;
        }
        cr.degenerate = cr.samples < std::max(1, samples / 2);
        cr.web2_invariant = !cr.degenerate && cr.web2_margin < tol;
        cr.barycenter_invariant = !cr.degenerate && cr.barycenter_margin < tol;
        rep.components.push_back(std::move(cr));
    }
    return rep;
}

}  // namespace webcurv
