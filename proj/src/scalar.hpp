#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace webcurv {

using real = long double;
using cplx = std::complex<long double>;

enum class ErrorCode { InvalidArgument, Parse, Domain, Degenerate, Numeric, Limit };

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(ErrorCode::Parse, what + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

enum class RingKind { Rational, QuadExt, ComplexFloat };

struct Ring {
    RingKind kind = RingKind::Rational;
    long d = 0;  // radicand, QuadExt only

    static Ring rational() { return {}; }
    static Ring quadext(long d);
    static Ring complex() { return {RingKind::ComplexFloat, 0}; }
    static Ring parse(std::string_view text);

    bool exact() const { return kind != RingKind::ComplexFloat; }
    std::string name() const;
    friend bool operator==(const Ring&, const Ring&) = default;
};

// Smallest ring containing both; mixing two different quadratic fields throws.
Ring join(const Ring& a, const Ring& b);

class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : a_(v) {}
    explicit Scalar(const mpq_class& q) : a_(q) { a_.canonicalize(); }
    static Scalar fraction(long num, long den);
    static Scalar quad(const mpq_class& a, const mpq_class& b, long d);
    static Scalar complex(cplx z);
    static Scalar zero(const Ring& r);
    static Scalar one(const Ring& r);
    static Scalar sqrt_of(long d);  // sqrt(d) in QuadExt(d) (or rational when d is a square)

    Ring ring() const;
    RingKind kind() const { return kind_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_rational_value() const;  // no irrational part (complex never)

    const mpq_class& rat() const { return a_; }
    const mpq_class& irr() const { return b_; }
    cplx to_complex() const;
    real magnitude() const { return std::abs(to_complex()); }
    std::size_t bit_size() const;

    Scalar to_ring(const Ring& r) const;
    Scalar inverse() const;
    Scalar conjugate() const;  // Galois conjugate a - b sqrt(D); identity otherwise

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);

    // Needs parentheses when printed as a factor of a product.
    bool is_compound() const;
    std::string to_string() const;

private:
    void promote_to(const Ring& r);

    RingKind kind_ = RingKind::Rational;
    long d_ = 0;
    mpq_class a_{0};
    mpq_class b_{0};
    cplx z_{0, 0};
};

bool approx_equal(const Scalar& a, const Scalar& b, real rel_tol);
bool is_square_free(long d);

}  // namespace webcurv
