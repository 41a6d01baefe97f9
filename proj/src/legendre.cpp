#include "legendre.hpp"

namespace webcurv {

AffineWeb legendre_affine(const AffineWeb& w) {
    if (w.d() < 1) throw Error(ErrorCode::Domain, "Legendre transform of a degree-0 web is a curve");
    const auto& V = affine_vars();
    Ring r = w.ring();
    MultiPoly x = MultiPoly::variable(V, 0, r), y = MultiPoly::variable(V, 1, r), p = MultiPoly::variable(V, 2, r);
    std::vector<MultiPoly> images{-p, y - x * p, x};
    MultiPoly G = w.F().compose(images);
    AffineWeb out = AffineWeb::make(G, {.allow_nonreduced = true, .validate = true});
    if (out.k() != w.d())
        throw Error(ErrorCode::Degenerate, "Legendre transform: slope degree " + std::to_string(out.k()) +
                                               " differs from web degree " + std::to_string(w.d()));
    return out;
}

ProjWeb legendre_projective(const ProjWeb& P) {
    if (P.d() < 1) throw Error(ErrorCode::Domain, "Legendre transform of a degree-0 web is a curve");
    const auto& V = bihom_vars();
    Ring r = P.ring();
    std::vector<MultiPoly> images;
    for (std::size_t i : {3, 4, 5, 0, 1, 2}) images.push_back(MultiPoly::variable(V, i, r));
    return ProjWeb::make(P.P().compose(images));
}

InvolutionReport involution_check(const AffineWeb& w, real tol) {
    InvolutionReport rep;
    AffineWeb twice = legendre_affine(legendre_affine(w));
    AffineWeb reflected = pullback_affine(w, {Scalar(-1), Scalar(0), Scalar(0), Scalar(1)}, {},
                                          {.allow_nonreduced = true, .validate = false});
    auto lam = proportionality(twice.F(), reflected.F(), w.ring().exact() ? 0 : tol);
    rep.pass = lam.has_value();
    if (lam) {
        rep.unit = *lam;
        rep.detail = "Leg(Leg(F)) = " + lam->to_string() + " * F(-x, y, -p)";
    } else {
        rep.detail = "Leg(Leg(F)) is not proportional to F(-x, y, -p)";
    }
    return rep;
}

}  // namespace webcurv
