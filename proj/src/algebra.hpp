#pragma once

#include "poly.hpp"

#include <array>
#include <optional>

namespace webcurv {

// Exact multivariate division in lex order; nullopt when g does not divide f.
// Over ComplexFloat the remainder is tested against a relative tolerance.
std::optional<MultiPoly> divide_exact(const MultiPoly& f, const MultiPoly& g);
MultiPoly divide_or_throw(const MultiPoly& f, const MultiPoly& g);

// Pseudo-remainder of f by g viewed as polynomials in var.
MultiPoly pseudo_remainder(const MultiPoly& f, const MultiPoly& g, std::size_t var);

MultiPoly content_in(const MultiPoly& f, std::size_t var);  // gcd of coefficients, free of var
MultiPoly primitive_part(const MultiPoly& f, std::size_t var);
MultiPoly gcd(const MultiPoly& f, const MultiPoly& g);  // monic in lex order
MultiPoly squarefree_part(const MultiPoly& f);
bool is_squarefree(const MultiPoly& f);

enum class ResultantMethod { Auto, Bareiss, Interpolation };
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::size_t var,
                    ResultantMethod method = ResultantMethod::Auto);
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, const std::string& var,
                    ResultantMethod method = ResultantMethod::Auto);

// Determinant of a square matrix of polynomials (fraction-free elimination).
MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m, const std::vector<std::string>& vars,
                              const Ring& ring);
Scalar bareiss_determinant(std::vector<std::vector<Scalar>> m);

struct LinearForm {
    std::array<Scalar, 3> c;  // a, b, c; first nonzero entry equals 1

    LinearForm() = default;
    LinearForm(const Scalar& a, const Scalar& b, const Scalar& c0);
    Ring ring() const;
    bool exact() const { return ring().exact(); }
    // a*v0 + b*v1 + c*v2 (three variables) or a*v0 + b*v1 + c (two variables).
    MultiPoly as_poly(const std::vector<std::string>& vars, const Ring& ring) const;
    std::string to_string() const;
    friend bool operator==(const LinearForm& l, const LinearForm& r) { return l.c == r.c; }
};

int linear_factor_multiplicity(const MultiPoly& f, const LinearForm& l);
int factor_multiplicity(const MultiPoly& f, const MultiPoly& factor);

// If a == lambda * b for a constant lambda, return lambda.
std::optional<Scalar> proportionality(const MultiPoly& a, const MultiPoly& b, real tol = 0);

// Homogenize in the given variables, appending the new variable to the list.
MultiPoly homogenize_poly(const MultiPoly& f, const std::string& new_var);

}  // namespace webcurv
