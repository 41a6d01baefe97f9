#include "algebra.hpp"

#include <algorithm>
#include <cmath>

namespace webcurv {

namespace {

bool divides_monomial(Monomial small, Monomial big) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (exponent(small, i) > exponent(big, i)) return false;
    return true;
}

constexpr real kFloatDivTol = 1e-9L;

}  // namespace

std::optional<MultiPoly> divide_exact(const MultiPoly& f, const MultiPoly& g) {
    if (g.is_zero()) throw Error(ErrorCode::Domain, "division by zero polynomial");
    Ring r = join(f.ring(), g.ring());
    MultiPoly q(g.vars(), r);
    if (f.is_zero()) return q;
    if (f.vars() != g.vars()) throw Error(ErrorCode::InvalidArgument, "divide: variable lists differ");
    const bool exact = r.exact();
    const real scale = exact ? 0 : f.max_abs_coefficient();
    MultiPoly rem = f;
    if (!exact) rem = rem.to_ring(r);
    const Monomial lg = g.leading_monomial();
    const Scalar inv = g.leading_coefficient().inverse();
    auto rterms = rem.terms();
    while (!rterms.empty()) {
        auto top = rterms.begin();
        Monomial m = top->first;
        if (!divides_monomial(lg, m)) {
            if (!exact && top->second.magnitude() <= kFloatDivTol * scale) {
                rterms.erase(top);
                continue;
            }
            return std::nullopt;
        }
        Scalar qc = top->second * inv;
        Monomial qm = m - lg;
        q.add_term(qm, qc);
        for (const auto& [mg, cg] : g.terms()) {
            Monomial t = qm + mg;
            Scalar v = qc * cg;
            auto it = rterms.find(t);
            if (it == rterms.end()) {
                rterms.emplace(t, -v);
            } else {
                it->second -= v;
                if (it->second.is_zero()) rterms.erase(it);
            }
        }
        if (!exact) rterms.erase(m);
    }
    return q;
}

MultiPoly divide_or_throw(const MultiPoly& f, const MultiPoly& g) {
    auto q = divide_exact(f, g);
    if (!q) throw Error(ErrorCode::Domain, "inexact polynomial division");
    return *q;
}

MultiPoly pseudo_remainder(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
    int dg = g.degree(var);
    if (dg < 0) throw Error(ErrorCode::Domain, "pseudo-remainder by zero");
    MultiPoly lc = g.leading_coefficient_in(var);
    MultiPoly r = f;
    const auto& vars = f.vars();
    while (!r.is_zero() && r.degree(var) >= dg) {
        int dr = r.degree(var);
        MultiPoly lr = r.leading_coefficient_in(var);
        MultiPoly shift = lr * MultiPoly::variable(vars, var, r.ring()).pow(static_cast<unsigned>(dr - dg));
        r = lc * r - shift * g;
    }
    return r;
}

MultiPoly content_in(const MultiPoly& f, std::size_t var) {
    auto coeffs = f.coefficients_in(var);
    MultiPoly c(f.vars(), f.ring());
    for (const auto& co : coeffs) {
        if (co.is_zero()) continue;
        c = c.is_zero() ? co.monic() : gcd(c, co);
        if (c.is_constant()) return MultiPoly::constant(f.vars(), Scalar::one(f.ring()));
    }
    return c;
}

MultiPoly primitive_part(const MultiPoly& f, std::size_t var) {
    if (f.is_zero()) return f;
    return divide_or_throw(f, content_in(f, var));
}

MultiPoly gcd(const MultiPoly& f, const MultiPoly& g) {
    if (!f.ring().exact() || !g.ring().exact()) throw Error(ErrorCode::Domain, "gcd requires an exact ring");
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    const auto& vars = f.vars();
    Ring ring = join(f.ring(), g.ring());
    MultiPoly one = MultiPoly::constant(vars, Scalar::one(ring));
    if (f.is_constant() || g.is_constant()) return one;
    std::size_t v = vars.size();
    for (std::size_t i = 0; i < vars.size() && v == vars.size(); ++i)
        if (f.involves(i) || g.involves(i)) v = i;
    if (!f.involves(v)) return gcd(f, content_in(g, v));
    if (!g.involves(v)) return gcd(content_in(f, v), g);

    MultiPoly cf = content_in(f, v), cg = content_in(g, v);
    MultiPoly c = gcd(cf, cg);
    MultiPoly a = divide_or_throw(f, cf), b = divide_or_throw(g, cg);
    if (a.degree(v) < b.degree(v)) std::swap(a, b);
    while (true) {
        MultiPoly r = pseudo_remainder(a, b, v);
        if (r.is_zero()) break;
        if (!r.involves(v)) return c.monic();
        a = std::move(b);
        b = primitive_part(r, v).monic();
    }
    return (c * primitive_part(b, v)).monic();
}

MultiPoly squarefree_part(const MultiPoly& f) {
    if (!f.ring().exact()) throw Error(ErrorCode::Domain, "squarefree_part requires an exact ring");
    if (f.is_zero()) throw Error(ErrorCode::Domain, "squarefree_part of zero");
    if (f.is_constant()) return MultiPoly::constant(f.vars(), Scalar::one(f.ring()));
    std::size_t v = 0;
    while (!f.involves(v)) ++v;
    MultiPoly c = content_in(f, v);
    MultiPoly pp = divide_or_throw(f, c);
    MultiPoly g = gcd(pp, pp.derivative(v));
    MultiPoly part = divide_or_throw(pp, g);
    return (part * squarefree_part(c)).monic();
}

bool is_squarefree(const MultiPoly& f) {
    MultiPoly s = squarefree_part(f);
    return s.degree() == f.degree();
}

Scalar bareiss_determinant(std::vector<std::vector<Scalar>> m) {
    const std::size_t n = m.size();
    if (n == 0) return Scalar(1);
    Ring r = m[0][0].ring();
    for (auto& row : m)
        for (auto& e : row) r = join(r, e.ring());
    bool flip = false;
    Scalar prev = Scalar::one(r);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return Scalar::zero(r);
            std::swap(m[p], m[k]);
            flip = !flip;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        }
        prev = m[k][k];
    }
    return flip ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m, const std::vector<std::string>& vars,
                              const Ring& ring) {
    const std::size_t n = m.size();
    if (n == 0) return MultiPoly::constant(vars, Scalar::one(ring));
    bool flip = false;
    MultiPoly prev = MultiPoly::constant(vars, Scalar::one(ring));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return MultiPoly(vars, ring);
            std::swap(m[p], m[k]);
            flip = !flip;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = divide_or_throw(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        }
        prev = m[k][k];
    }
    return flip ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

namespace {

template <class T>
std::vector<std::vector<T>> sylvester(const std::vector<T>& fc, const std::vector<T>& gc, const T& zero) {
    // fc, gc indexed by power; rows hold coefficients from the top degree down
    const std::size_t m = fc.size() - 1, n = gc.size() - 1, N = m + n;
    std::vector<std::vector<T>> s(N, std::vector<T>(N, zero));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j) s[i][i + (m - j)] = fc[j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n; ++j) s[n + i][i + (n - j)] = gc[j];
    return s;
}

MultiPoly resultant_bareiss(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
    Ring ring = join(f.ring(), g.ring());
    auto fc = f.coefficients_in(var), gc = g.coefficients_in(var);
    bool univariate = true;
    for (std::size_t i = 0; i < f.nvars(); ++i)
        if (i != var && (f.involves(i) || g.involves(i))) univariate = false;
    if (univariate) {
        std::vector<Scalar> fs, gs;
        for (auto& c : fc) fs.push_back(c.constant_term().to_ring(ring));
        for (auto& c : gc) gs.push_back(c.constant_term().to_ring(ring));
        return MultiPoly::constant(f.vars(), bareiss_determinant(sylvester(fs, gs, Scalar::zero(ring))));
    }
    return bareiss_determinant(sylvester(fc, gc, MultiPoly(f.vars(), ring)), f.vars(), ring);
}

MultiPoly resultant_interp(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < f.nvars(); ++i)
        if (i != var && (f.involves(i) || g.involves(i))) others.push_back(i);
    if (others.empty()) return resultant_bareiss(f, g, var);
    const std::size_t w = others.back();
    const int m = f.degree(var), n = g.degree(var);
    const int bound = n * std::max(f.degree(w), 0) + m * std::max(g.degree(w), 0);
    const MultiPoly lf = f.leading_coefficient_in(var), lg = g.leading_coefficient_in(var);
    Ring ring = join(f.ring(), g.ring());

    std::vector<Scalar> pts;
    std::vector<MultiPoly> vals;
    for (long k = 0; static_cast<int>(pts.size()) <= bound; ++k) {
        if (k > 4L * bound + 64) throw Error(ErrorCode::Degenerate, "resultant: no good evaluation points");
        long t = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
        Scalar ts(t);
        if (lf.substitute(w, ts).is_zero() || lg.substitute(w, ts).is_zero()) continue;
        pts.push_back(ts);
        vals.push_back(resultant_interp(f.substitute(w, ts), g.substitute(w, ts), var));
    }
    // Newton divided differences with polynomial values
    const std::size_t N = pts.size();
    for (std::size_t j = 1; j < N; ++j)
        for (std::size_t i = N - 1; i >= j; --i) {
            vals[i] = (vals[i] - vals[i - 1]) * (pts[i] - pts[i - j]).inverse();
            if (i == j) break;
        }
    MultiPoly wv = MultiPoly::variable(f.vars(), w, ring);
    MultiPoly out = vals[N - 1];
    for (std::size_t i = N - 1; i-- > 0;) out = out * (wv - MultiPoly::constant(f.vars(), pts[i])) + vals[i];
    return out;
}

}  // namespace

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::size_t var, ResultantMethod method) {
    if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::Domain, "resultant of zero polynomial");
    if (f.vars() != g.vars()) throw Error(ErrorCode::InvalidArgument, "resultant: variable lists differ");
    const int m = f.degree(var), n = g.degree(var);
    if (m == 0 && n == 0) throw Error(ErrorCode::Domain, "resultant: both inputs constant in " + f.vars()[var]);
    if (m == 0) return f.pow(static_cast<unsigned>(n));
    if (n == 0) return g.pow(static_cast<unsigned>(m));
    Ring ring = join(f.ring(), g.ring());
    if (method == ResultantMethod::Auto) method = ring.exact() ? ResultantMethod::Interpolation : ResultantMethod::Bareiss;
    if (method == ResultantMethod::Interpolation && !ring.exact())
        throw Error(ErrorCode::Domain, "interpolation resultant requires an exact ring");
    return method == ResultantMethod::Bareiss ? resultant_bareiss(f, g, var) : resultant_interp(f, g, var);
}

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, const std::string& var, ResultantMethod method) {
    return resultant(f, g, f.var_index(var), method);
}

LinearForm::LinearForm(const Scalar& a, const Scalar& b, const Scalar& c0) : c{a, b, c0} {
    Ring r = join(join(a.ring(), b.ring()), c0.ring());
    for (auto& e : c) e = e.to_ring(r);
    std::size_t lead = 0;
    while (lead < 3 && c[lead].is_zero()) ++lead;
    if (lead == 3) throw Error(ErrorCode::InvalidArgument, "linear form with all coefficients zero");
    Scalar inv = c[lead].inverse();
    for (auto& e : c) e *= inv;
    c[lead] = Scalar::one(r);
}

Ring LinearForm::ring() const { return join(join(c[0].ring(), c[1].ring()), c[2].ring()); }

MultiPoly LinearForm::as_poly(const std::vector<std::string>& vars, const Ring& ring) const {
    Ring r = join(ring, this->ring());
    MultiPoly p(vars, r);
    if (vars.size() < 2) throw Error(ErrorCode::InvalidArgument, "linear form needs at least two variables");
    p.add_term(var_monomial(0, 1), c[0]);
    p.add_term(var_monomial(1, 1), c[1]);
    if (vars.size() >= 3)
        p.add_term(var_monomial(2, 1), c[2]);
    else
        p.add_term(0, c[2]);
    return p;
}

std::string LinearForm::to_string() const {
    MultiPoly p = as_poly({"x", "y", "z"}, ring());
    return p.to_string();
}

int factor_multiplicity(const MultiPoly& f, const MultiPoly& factor) {
    if (f.is_zero()) throw Error(ErrorCode::Domain, "multiplicity in the zero polynomial");
    if (factor.is_constant()) throw Error(ErrorCode::InvalidArgument, "multiplicity of a constant factor");
    int e = 0;
    MultiPoly cur = f;
    while (cur.degree() >= factor.degree()) {
        auto q = divide_exact(cur, factor);
        if (!q) break;
        cur = std::move(*q);
        ++e;
    }
    return e;
}

int linear_factor_multiplicity(const MultiPoly& f, const LinearForm& l) {
    bool homogeneous_ctx = f.nvars() >= 3;
    std::vector<std::string> vars = f.vars();
    if (!homogeneous_ctx && f.nvars() != 2)
        throw Error(ErrorCode::InvalidArgument, "linear_factor_multiplicity needs 2 or 3 variables");
    MultiPoly lp = l.as_poly(vars, f.ring());
    if (lp.is_constant()) throw Error(ErrorCode::InvalidArgument, "linear form is constant in this chart");
    Ring r = join(f.ring(), lp.ring());
    return factor_multiplicity(f.to_ring(r), lp);
}

std::optional<Scalar> proportionality(const MultiPoly& a, const MultiPoly& b, real tol) {
    if (a.vars() != b.vars()) return std::nullopt;
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    bool exact = tol == 0 && a.ring().exact() && b.ring().exact();
    if (exact) {
        if (a.size() != b.size()) return std::nullopt;
        Scalar lam = a.leading_coefficient() / b.leading_coefficient();
        if (a == b * lam) return lam;
        return std::nullopt;
    }
    // pick the dominant coefficient of b to fix the ratio
    Monomial best = 0;
    real bm = -1;
    for (const auto& [m, c] : b.terms())
        if (c.magnitude() > bm) {
            bm = c.magnitude();
            best = m;
        }
    cplx lam = a.coefficient(best).to_complex() / b.coefficient(best).to_complex();
    real scale = std::max(a.max_abs_coefficient(), std::abs(lam) * bm);
    MultiPoly diff = a.to_ring(Ring::complex()) - b.to_ring(Ring::complex()) * Scalar::complex(lam);
    if (diff.max_abs_coefficient() > tol * scale) return std::nullopt;
    return Scalar::complex(lam);
}

MultiPoly homogenize_poly(const MultiPoly& f, const std::string& new_var) {
    auto vars = f.vars();
    vars.push_back(new_var);
    MultiPoly out(vars, f.ring());
    int d = f.degree();
    std::size_t h = vars.size() - 1;
    for (const auto& [m, c] : f.terms()) out.add_term(m | var_monomial(h, d - total_degree(m)), c);
    return out;
}

}  // namespace webcurv
