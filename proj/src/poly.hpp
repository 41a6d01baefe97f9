#pragma once

#include "scalar.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace webcurv {

// Exponent vector packed one byte per variable; variable 0 occupies the top
// byte so that integer order on the packed word is lex order.
using Monomial = std::uint64_t;
constexpr std::size_t kMaxVars = 8;
constexpr int kMaxExponent = 255;

inline int exponent(Monomial m, std::size_t var) {
    return static_cast<int>((m >> (8 * (kMaxVars - 1 - var))) & 0xff);
}
inline Monomial var_monomial(std::size_t var, int e) {
    return static_cast<Monomial>(e) << (8 * (kMaxVars - 1 - var));
}
inline Monomial set_exponent(Monomial m, std::size_t var, int e) {
    return (m & ~var_monomial(var, 0xff)) | var_monomial(var, e);
}
Monomial make_monomial(std::span<const int> exps);
int total_degree(Monomial m);

std::size_t bit_cap();
void set_bit_cap(std::size_t bits);

class MultiPoly {
public:
    using TermMap = std::map<Monomial, Scalar, std::greater<Monomial>>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars, Ring ring = Ring::rational());
    static MultiPoly constant(std::vector<std::string> vars, const Scalar& c);
    static MultiPoly variable(std::vector<std::string> vars, std::size_t i, Ring ring = Ring::rational());
    static MultiPoly variable(std::vector<std::string> vars, const std::string& name, Ring ring = Ring::rational());

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    std::size_t var_index(const std::string& name) const;  // throws if absent
    Ring ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Scalar constant_term() const;
    Scalar coefficient(Monomial m) const;
    const Scalar& leading_coefficient() const;  // lex-leading term
    Monomial leading_monomial() const;

    int degree() const;
    int degree(std::size_t var) const;
    bool involves(std::size_t var) const { return degree(var) > 0; }
    bool is_homogeneous(std::span<const std::size_t> group, int* deg = nullptr) const;

    std::vector<MultiPoly> coefficients_in(std::size_t var) const;
    static MultiPoly from_coefficients(std::span<const MultiPoly> coeffs, std::size_t var);
    MultiPoly leading_coefficient_in(std::size_t var) const;

    MultiPoly derivative(std::size_t var) const;
    MultiPoly substitute(std::size_t var, const MultiPoly& value) const;
    MultiPoly substitute(std::size_t var, const Scalar& value) const;
    // images[i] replaces variable i; all images share one variable list.
    MultiPoly compose(std::span<const MultiPoly> images) const;
    MultiPoly rename(std::vector<std::string> vars) const;
    MultiPoly embed(const std::vector<std::string>& vars) const;  // by name
    MultiPoly to_ring(const Ring& r) const;
    MultiPoly map_coefficients(const std::function<Scalar(const Scalar&)>& f) const;

    Scalar eval(std::span<const Scalar> point) const;
    cplx eval(std::span<const cplx> point) const;

    void add_term(Monomial m, const Scalar& c);
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const Scalar& c);
    MultiPoly operator-() const;
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Scalar& c) { return a *= c; }
    friend MultiPoly operator*(const Scalar& c, MultiPoly a) { return a *= c; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    MultiPoly pow(unsigned e) const;

    MultiPoly monic() const;  // divide by the lex-leading coefficient
    std::size_t max_bit_size() const;
    real max_abs_coefficient() const;

    std::string to_string() const;

private:
    void check_compatible(const MultiPoly& o) const;

    std::vector<std::string> vars_;
    Ring ring_;
    TermMap terms_;
};

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars, const Ring& ring);

}  // namespace webcurv
