#pragma once

#include "algebra.hpp"

#include <array>
#include <cstdint>

namespace webcurv {

inline const std::vector<std::string>& affine_vars() {
    static const std::vector<std::string> v{"x", "y", "p"};
    return v;
}
inline const std::vector<std::string>& plane_vars() {
    static const std::vector<std::string> v{"x", "y"};
    return v;
}
inline const std::vector<std::string>& proj_plane_vars() {
    static const std::vector<std::string> v{"x", "y", "z"};
    return v;
}
inline const std::vector<std::string>& bihom_vars() {
    static const std::vector<std::string> v{"x", "y", "z", "a", "b", "c"};
    return v;
}

struct WebOptions {
    bool allow_nonreduced = false;
    bool validate = true;
};

// k-web given by F(x, y; p) = 0 with p = dy/dx.
class AffineWeb {
public:
    static AffineWeb make(const MultiPoly& F, WebOptions opts = {});

    const MultiPoly& F() const { return F_; }
    int k() const { return k_; }
    int d() const { return d_; }
    Ring ring() const { return F_.ring(); }
    std::vector<MultiPoly> coefficients() const { return F_.coefficients_in(2); }  // a_j(x,y), as (x,y,p) polys

private:
    MultiPoly F_;
    int k_ = 0;
    int d_ = 0;
};

// Bihomogeneous P(x,y,z; a,b,c), kept in normal form modulo xa + yb + zc.
class ProjWeb {
public:
    static ProjWeb make(const MultiPoly& P);

    const MultiPoly& P() const { return P_; }
    int d() const { return d_; }
    int k() const { return k_; }
    Ring ring() const { return P_.ring(); }

private:
    MultiPoly P_;
    int d_ = 0;
    int k_ = 0;
};

class Foliation {
public:
    static Foliation affine(const MultiPoly& A, const MultiPoly& B);  // vector field A d/dx + B d/dy
    static Foliation homogeneous(const MultiPoly& A, const MultiPoly& B, const MultiPoly& C);
    static Foliation from_form(const MultiPoly& P, const MultiPoly& Q);  // kernel of P dx + Q dy

    const MultiPoly& A() const { return A_; }
    const MultiPoly& B() const { return B_; }
    const std::array<MultiPoly, 3>& homogeneous_field() const { return X_; }
    int degree() const { return degree_; }
    Ring ring() const { return join(A_.ring(), B_.ring()); }

private:
    MultiPoly A_, B_;
    std::array<MultiPoly, 3> X_;
    int degree_ = 0;
};

// Normal forms modulo a*x + b*y + c*z over the variables of bihom_vars().
MultiPoly reduce_zc(const MultiPoly& P);
MultiPoly reduce_ax(const MultiPoly& P);

AffineWeb foliation_to_web(const Foliation& f);
int web_degree(const MultiPoly& F, std::uint64_t seed = 0x5eed);
MultiPoly discriminant(const AffineWeb& w, bool reduced = false);
// Homogeneous discriminant in (x,y,z), including the line at infinity.
MultiPoly projective_discriminant(const AffineWeb& w);

ProjWeb homogenize(const AffineWeb& w);
AffineWeb dehomogenize(const ProjWeb& P, int chart, WebOptions opts = {});

// phi(X,Y) = M (X,Y) + t; returns the web whose leaves are phi-preimages of w's leaves.
AffineWeb pullback_affine(const AffineWeb& w, const std::array<Scalar, 4>& M, const std::array<Scalar, 2>& t = {},
                          WebOptions opts = {});
AffineWeb superpose(const AffineWeb& a, const AffineWeb& b);

}  // namespace webcurv
