#include "slope_field.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace webcurv {

namespace {

std::vector<cplx> powers(cplx v, int n) {
    std::vector<cplx> out(static_cast<std::size_t>(std::max(n, 0)) + 1);
    out[0] = 1;
    for (std::size_t i = 1; i < out.size(); ++i) out[i] = out[i - 1] * v;
    return out;
}

cplx at(const std::vector<cplx>& pw, int e) { return e < 0 ? cplx(0) : pw[static_cast<std::size_t>(e)]; }

cplx horner(const std::vector<cplx>& a, cplx p) {
    cplx s = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) s = s * p + *it;
    return s;
}

cplx horner_derivative(const std::vector<cplx>& a, cplx p) {
    cplx s = 0;
    for (std::size_t j = a.size() - 1; j >= 1; --j) s = s * p + a[j] * static_cast<real>(j);
    return s;
}

}  // namespace

NumericWeb::NumericWeb(const AffineWeb& w) : NumericWeb(w.F(), w.k()) {}

NumericWeb::NumericWeb(const MultiPoly& F, int k) : k_(k), source_(F.embed(affine_vars())) {
    for (const auto& [m, c] : source_.terms()) {
        Term t{exponent(m, 0), exponent(m, 1), exponent(m, 2), c.to_complex()};
        mx_ = std::max(mx_, t.ex);
        my_ = std::max(my_, t.ey);
        terms_.push_back(t);
    }
}

std::vector<cplx> NumericWeb::coefficients_at(cplx x, cplx y) const {
    auto px = powers(x, mx_), py = powers(y, my_);
    std::vector<cplx> a(static_cast<std::size_t>(k_) + 1);
    for (const auto& t : terms_) a[static_cast<std::size_t>(t.ep)] += t.c * px[t.ex] * py[t.ey];
    return a;
}

Partials NumericWeb::partials(cplx x, cplx y, cplx p) const {
    auto X = powers(x, mx_), Y = powers(y, my_), P = powers(p, k_);
    Partials d{};
    for (const auto& t : terms_) {
        const real ex = t.ex, ey = t.ey, ep = t.ep;
        cplx x0 = at(X, t.ex), y0 = at(Y, t.ey), p0 = at(P, t.ep);
        cplx x1 = at(X, t.ex - 1) * ex, y1 = at(Y, t.ey - 1) * ey, p1 = at(P, t.ep - 1) * ep;
        cplx x2 = at(X, t.ex - 2) * ex * (ex - 1), y2 = at(Y, t.ey - 2) * ey * (ey - 1),
             p2 = at(P, t.ep - 2) * ep * (ep - 1);
        d.F += t.c * x0 * y0 * p0;
        d.Fx += t.c * x1 * y0 * p0;
        d.Fy += t.c * x0 * y1 * p0;
        d.Fp += t.c * x0 * y0 * p1;
        d.Fxx += t.c * x2 * y0 * p0;
        d.Fxy += t.c * x1 * y1 * p0;
        d.Fyy += t.c * x0 * y2 * p0;
        d.Fxp += t.c * x1 * y0 * p1;
        d.Fyp += t.c * x0 * y1 * p1;
        d.Fpp += t.c * x0 * y0 * p2;
        d.Fp_abs += std::abs(t.c * x0 * y0 * p1);
    }
    return d;
}

NumericWeb NumericWeb::perturbed(real eps, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    NumericWeb out = *this;
    MultiPoly src(affine_vars(), Ring::complex());
    for (auto& t : out.terms_) {
        t.c *= 1 + eps * static_cast<real>(u(rng));
        src.add_term(make_monomial(std::vector<int>{t.ex, t.ey, t.ep}), Scalar::complex(t.c));
    }
    out.source_ = src;
    return out;
}

NumericWeb NumericWeb::rotated(real theta) const {
    Scalar c = Scalar::complex(std::cos(theta)), s = Scalar::complex(std::sin(theta));
    AffineWeb w = AffineWeb::make(source_.to_ring(Ring::complex()), {.allow_nonreduced = true, .validate = false});
    AffineWeb r = pullback_affine(w, {c, -s, s, c}, {}, {.allow_nonreduced = true, .validate = false});
    return NumericWeb(r.F(), r.k());
}

SlopeSet slope_roots(const NumericWeb& w, cplx x, cplx y, real threshold) {
    const int k = w.k();
    auto a = w.coefficients_at(x, y);
    real scale = 0;
    for (auto& c : a) scale = std::max(scale, std::abs(c));
    if (scale == 0) throw InadmissiblePoint(Inadmissibility::DiscriminantProximity, "F vanishes identically at the point");
    if (std::abs(a.back()) < threshold * scale)
        throw InadmissiblePoint(Inadmissibility::SlopeAtInfinity, "leading coefficient collapse (slope at infinity)");

    SlopeSet s{x, y, {}, 0, 0};
    if (k == 1) {
        s.slopes = {-a[0] / a[1]};
    } else {
        using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
        Mat C = Mat::Zero(k, k);
        for (int i = 1; i < k; ++i) C(i, i - 1) = 1;
        for (int i = 0; i < k; ++i) C(i, k - 1) = -a[static_cast<std::size_t>(i)] / a.back();
        Eigen::ComplexEigenSolver<Mat> es(C, false);
        if (es.info() != Eigen::Success) throw Error(ErrorCode::Numeric, "companion eigenvalue solve failed");
        for (int i = 0; i < k; ++i) s.slopes.push_back(es.eigenvalues()(i));
    }
    for (auto& p : s.slopes)
        for (int it = 0; it < 2; ++it) {
            cplx d = horner_derivative(a, p);
            if (d != cplx(0)) p -= horner(a, p) / d;
        }
    std::sort(s.slopes.begin(), s.slopes.end(), [](cplx u, cplx v) {
        return u.real() != v.real() ? u.real() < v.real() : u.imag() < v.imag();
    });

    real big = 0;
    for (auto& p : s.slopes) big = std::max(big, std::abs(p));
    s.separation = k > 1 ? std::numeric_limits<real>::infinity() : 0;
    for (std::size_t i = 0; i < s.slopes.size(); ++i)
        for (std::size_t j = i + 1; j < s.slopes.size(); ++j)
            s.separation = std::min(s.separation, std::abs(s.slopes[i] - s.slopes[j]));
    if (k > 1 && s.separation < threshold * (1 + big))
        throw InadmissiblePoint(Inadmissibility::DiscriminantProximity, "point is on or near the discriminant");

    s.conditioning = std::numeric_limits<real>::infinity();
    for (auto& p : s.slopes) {
        real res_mag = 0, pp = 1;
        for (std::size_t j = 0; j < a.size(); ++j, pp *= std::abs(p)) res_mag += std::abs(a[j]) * pp;
        real cond = std::abs(horner_derivative(a, p)) / (scale * std::pow(1 + std::abs(p), k - 1));
        s.conditioning = std::min(s.conditioning, cond);
        if (std::abs(horner(a, p)) > 1e-12L * res_mag)
            throw InadmissiblePoint(Inadmissibility::Conditioning, "slope polish did not reach the residual bound");
    }
    if (s.conditioning < threshold)
        throw InadmissiblePoint(Inadmissibility::Conditioning, "F_p below the conditioning floor");
    return s;
}

SlopeSet slope_roots(const AffineWeb& w, cplx x, cplx y) { return slope_roots(NumericWeb(w), x, y); }

BranchJet branch_jet(const NumericWeb& w, cplx x, cplx y, cplx p, real floor) {
    Partials d = w.partials(x, y, p);
    if (!(std::abs(d.Fp) >= floor * d.Fp_abs) || d.Fp == cplx(0))
        throw InadmissiblePoint(Inadmissibility::Conditioning, "F_p below the conditioning floor");
    BranchJet j;
    j.p = p;
    j.px = -d.Fx / d.Fp;
    j.py = -d.Fy / d.Fp;
    j.pxx = -(d.Fxx + 2.0L * d.Fxp * j.px + d.Fpp * j.px * j.px) / d.Fp;
    j.pxy = -(d.Fxy + d.Fxp * j.py + d.Fyp * j.px + d.Fpp * j.px * j.py) / d.Fp;
    j.pyy = -(d.Fyy + 2.0L * d.Fyp * j.py + d.Fpp * j.py * j.py) / d.Fp;
    return j;
}

BranchJet branch_jet(const AffineWeb& w, cplx x, cplx y, cplx p) { return branch_jet(NumericWeb(w), x, y, p); }

Slope barycenter_slope(const Slope& f, std::span<const cplx> slopes) {
    const real k = static_cast<real>(slopes.size());
    if (slopes.empty()) throw Error(ErrorCode::InvalidArgument, "barycenter of an empty slope set");
    if (f.infinite) {
        cplx sum = 0;
        for (auto w : slopes) sum += w;
        return {sum / k};
    }
    cplx W = 1, dW = 0;
    for (auto w : slopes) {
        dW = dW * (f.value - w) + W;
        W *= f.value - w;
    }
    if (W == cplx(0)) return f;
    if (dW == cplx(0)) return Slope::inf();
    return {f.value - k * W / dW};
}

cplx cross_ratio(const std::array<Slope, 4>& z) {
    // (z1-z3)(z2-z4) / ((z1-z4)(z2-z3)); factors through an infinite slope cancel in pairs
    auto diff = [&](int i, int j) { return z[i].infinite || z[j].infinite ? cplx(1) : z[i].value - z[j].value; };
    return diff(0, 2) * diff(1, 3) / (diff(0, 3) * diff(1, 2));
}

JInvariant j_invariant(const std::array<Slope, 4>& z) {
    real big = 0, sep = std::numeric_limits<real>::infinity();
    for (int i = 0; i < 4; ++i) {
        if (!z[i].infinite) big = std::max(big, std::abs(z[i].value));
        for (int j = i + 1; j < 4; ++j) {
            if (z[i].infinite && z[j].infinite) throw Error(ErrorCode::Degenerate, "repeated slope at infinity");
            if (z[i].infinite || z[j].infinite) continue;
            sep = std::min(sep, std::abs(z[i].value - z[j].value));
        }
    }
    if (sep == 0) throw Error(ErrorCode::Degenerate, "j-invariant undefined at a slope collision");
    cplx l = cross_ratio(z);
    cplx num = l * l - l + 1.0L;
    return {256.0L * num * num * num / (l * l * (l - 1.0L) * (l - 1.0L)), sep < 1e-7L * (1 + big)};
}

}  // namespace webcurv
