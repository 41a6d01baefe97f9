#pragma once

#include "web_model.hpp"

#include <optional>

namespace webcurv {

enum class Inadmissibility { DiscriminantProximity, SlopeAtInfinity, Conditioning };

class InadmissiblePoint : public Error {
public:
    InadmissiblePoint(Inadmissibility why, const std::string& what) : Error(ErrorCode::Domain, what), why_(why) {}
    Inadmissibility why() const { return why_; }

private:
    Inadmissibility why_;
};

struct Partials {
    cplx F, Fx, Fy, Fp, Fxx, Fxy, Fyy, Fxp, Fyp, Fpp;
    real Fp_abs;  // sum of |terms| of F_p, the scale for conditioning tests
};

// F(x,y,p) with complex coefficients, for fast pointwise evaluation.
class NumericWeb {
public:
    explicit NumericWeb(const AffineWeb& w);
    NumericWeb(const MultiPoly& F, int k);

    int k() const { return k_; }
    std::vector<cplx> coefficients_at(cplx x, cplx y) const;  // a_0 .. a_k
    Partials partials(cplx x, cplx y, cplx p) const;
    // Every coefficient c_t scaled by 1 + eps * r_t, r_t in [-1, 1] drawn from seed.
    NumericWeb perturbed(real eps, std::uint64_t seed) const;
    // The same web in coordinates rotated by angle theta: phi(X,Y) = (cX - sY, sX + cY).
    NumericWeb rotated(real theta) const;

private:
    struct Term {
        int ex, ey, ep;
        cplx c;
    };
    NumericWeb() = default;
    std::vector<Term> terms_;
    int k_ = 0, mx_ = 0, my_ = 0;
    MultiPoly source_;
};

inline constexpr real kAdmissibility = 1e-8L;

struct SlopeSet {
    cplx x, y;
    std::vector<cplx> slopes;
    real separation = 0;    // min |p_i - p_j|
    real conditioning = 0;  // min |F_p| over branches, relative to the coefficient scale
};

SlopeSet slope_roots(const NumericWeb& w, cplx x, cplx y, real threshold = kAdmissibility);
SlopeSet slope_roots(const AffineWeb& w, cplx x, cplx y);

struct BranchJet {
    cplx p, px, py, pxx, pxy, pyy;
};

BranchJet branch_jet(const NumericWeb& w, cplx x, cplx y, cplx p, real floor = kAdmissibility);
BranchJet branch_jet(const AffineWeb& w, cplx x, cplx y, cplx p);

// A slope in P^1: either finite or the vertical direction.
struct Slope {
    cplx value;
    bool infinite = false;
    static Slope inf() { return {0, true}; }
};

Slope barycenter_slope(const Slope& f, std::span<const cplx> slopes);

struct JInvariant {
    cplx j;
    bool near_degenerate = false;
};

JInvariant j_invariant(const std::array<Slope, 4>& z);
cplx cross_ratio(const std::array<Slope, 4>& z);

}  // namespace webcurv
