#pragma once

#include "web_model.hpp"

namespace webcurv {

// G(x,y,p) = F(-p, y - x*p; x): the line y = x*X + y' of the dual chart, with X = -dy'/dx.
AffineWeb legendre_affine(const AffineWeb& w);
ProjWeb legendre_projective(const ProjWeb& P);

struct InvolutionReport {
    bool pass = false;
    Scalar unit;  // Leg(Leg(w)) = unit * (reflection pullback of w)
    std::string detail;
};

// Leg(Leg(F))(x,y,p) equals F(-x, y, -p): the double dual comes back through (x,y) -> (-x,y).
InvolutionReport involution_check(const AffineWeb& w, real tol = 1e-9L);

}  // namespace webcurv
