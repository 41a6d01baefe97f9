#pragma once

#include "slope_field.hpp"

#include <map>
#include <optional>

namespace webcurv {

// A root of a univariate polynomial, exact when it lies in Q or a quadratic field.
struct Root {
    cplx value;
    std::optional<Scalar> exact;
};

// Distinct roots of f, a polynomial in the single variable var (other variables absent).
std::vector<Root> univariate_roots(const MultiPoly& f, std::size_t var);
// Best rational approximation with denominator <= max_den, if within rel_tol.
std::optional<mpq_class> rationalize(real v, real rel_tol = 1e-12L, long max_den = 1000000);

// Projective point, normalized so its last nonzero coordinate is 1.
struct ProjPoint {
    std::array<cplx, 3> value{};
    std::optional<std::array<Scalar, 3>> exact;
    real residual = 0;
    std::string to_string() const;
};

MultiPoly inflection_divisor(const Foliation& f);

bool invariant_line_check(const Foliation& f, const LinearForm& l);
// Same test for lines with float coefficients; relative tolerance on samples along the line.
bool invariant_line_check_numeric(const Foliation& f, const LinearForm& l, real tol = 1e-9L);

struct LineSearch {
    std::vector<LinearForm> lines;  // exact lines first, then float ones
    bool complete = true;           // false when the elimination degenerated
    std::string note;
};

LineSearch find_invariant_lines(const Foliation& f);

// Lines dividing a polynomial in (x,y) (affine) or (x,y,z) (homogeneous, including z = 0).
LineSearch linear_factors(const MultiPoly& P);

struct ConvexityReport {
    bool convex = false, reduced = false;
    int inflection_degree = 0;
    std::vector<std::pair<LinearForm, int>> factors;
    MultiPoly cofactor;  // what remains of I(F) after removing the lines
    bool complete = true;
};

ConvexityReport convexity_report(const Foliation& f);

std::vector<ProjPoint> singular_points(const Foliation& f);

enum class LinearClass { NondegenerateDiagonalizable, Radial, Nilpotent, Zero, Other };
std::string to_string(LinearClass c);

struct SingularityRecord {
    ProjPoint location;
    LinearClass linear_class = LinearClass::Other;
    std::optional<int> radial_order;  // nu - 1
    int nu = 0;                       // tangency multiplicity of a generic line
    bool exact = false;
};

SingularityRecord classify_singularity(const Foliation& f, const ProjPoint& s);
// nu from the homogeneous expansion of X at s (first j with X_j not parallel to R); exact points only.
int radial_nu_by_jets(const Foliation& f, const ProjPoint& s);

struct RadialCensus {
    std::map<int, int> counts;  // order -> r_i
    int total = 0, weighted = 0, bound = 0;
    bool bound_ok = true;
    std::vector<SingularityRecord> records;  // all singular points
};

RadialCensus radial_census(const Foliation& f);

MultiPoly tangency_divisor(const Foliation& f, const Foliation& g);

// The line of the dual plane (Legendre chart) made of the lines through s.
LinearForm dual_line(const ProjPoint& s);

struct ComponentReport {
    std::string component;  // polynomial in (x,y)
    bool linear = false;
    int multiplicity = 0;
    int samples = 0;
    real web2_margin = 0;        // max sine between the repeated slope and the tangent
    real barycenter_margin = 0;  // same for the barycenter of the other branches
    bool web2_invariant = false, barycenter_invariant = false;
    bool degenerate = false;
};

struct DeltaReport {
    MultiPoly discriminant;
    std::vector<ComponentReport> components;
};

DeltaReport discriminant_component_report(const AffineWeb& w, int samples = 10, std::uint64_t seed = 1,
                                          real tol = 1e-6L);

}  // namespace webcurv
