#include "scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace webcurv {

bool is_square_free(long d) {
    if (d == 0 || d == 1) return false;
    long n = d < 0 ? -d : d;
    for (long f = 2; f * f <= n; ++f)
        if (n % (f * f) == 0) return false;
    return true;
}

Ring Ring::quadext(long d) {
    if (!is_square_free(d))
        throw Error(ErrorCode::InvalidArgument, "quadext radicand must be square-free and not 0 or 1: " + std::to_string(d));
    return {RingKind::QuadExt, d};
}

Ring Ring::parse(std::string_view text) {
    if (text == "rational" || text == "Q") return rational();
    if (text == "complex") return complex();
    if (text.starts_with("quadext:")) {
        auto rest = text.substr(8);
        long d = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), d);
        if (ec != std::errc() || ptr != rest.data() + rest.size())
            throw Error(ErrorCode::InvalidArgument, "bad ring '" + std::string(text) + "'");
        return quadext(d);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown ring '" + std::string(text) + "'");
}

std::string Ring::name() const {
    switch (kind) {
        case RingKind::Rational: return "rational";
        case RingKind::QuadExt: return "quadext:" + std::to_string(d);
        case RingKind::ComplexFloat: return "complex";
    }
    return "?";
}

Ring join(const Ring& a, const Ring& b) {
    if (a == b) return a;
    if (a.kind == RingKind::ComplexFloat || b.kind == RingKind::ComplexFloat) return Ring::complex();
    if (a.kind == RingKind::Rational) return b;
    if (b.kind == RingKind::Rational) return a;
    throw Error(ErrorCode::Domain, "mixed quadratic extensions " + a.name() + " and " + b.name());
}

Scalar Scalar::fraction(long num, long den) {
    if (den == 0) throw Error(ErrorCode::Domain, "zero denominator");
    return Scalar(mpq_class(num, den));
}

Scalar Scalar::quad(const mpq_class& a, const mpq_class& b, long d) {
    Scalar s;
    s.kind_ = RingKind::QuadExt;
    s.d_ = Ring::quadext(d).d;
    s.a_ = a;
    s.b_ = b;
    s.a_.canonicalize();
    s.b_.canonicalize();
    return s;
}

Scalar Scalar::complex(cplx z) {
    Scalar s;
    s.kind_ = RingKind::ComplexFloat;
    s.z_ = z;
    return s;
}

Scalar Scalar::zero(const Ring& r) { return Scalar(0).to_ring(r); }
Scalar Scalar::one(const Ring& r) { return Scalar(1).to_ring(r); }

Scalar Scalar::sqrt_of(long d) {
    long s = std::lround(std::sqrt(static_cast<double>(std::labs(d))));
    if (d >= 0 && s * s == d) return Scalar(s);
    // reduce d = f^2 * e with e square-free
    long n = std::labs(d), f = 1;
    for (long q = 2; q * q <= n; ++q)
        while (n % (q * q) == 0) {
            n /= q * q;
            f *= q;
        }
    long e = d < 0 ? -n : n;
    return quad(0, f, e);
}

Ring Scalar::ring() const {
    switch (kind_) {
        case RingKind::Rational: return Ring::rational();
        case RingKind::QuadExt: return {RingKind::QuadExt, d_};
        case RingKind::ComplexFloat: return Ring::complex();
    }
    return {};
}

bool Scalar::is_zero() const {
    if (kind_ == RingKind::ComplexFloat) return z_ == cplx(0, 0);
    return sgn(a_) == 0 && sgn(b_) == 0;
}

bool Scalar::is_one() const {
    if (kind_ == RingKind::ComplexFloat) return z_ == cplx(1, 0);
    return a_ == 1 && sgn(b_) == 0;
}

bool Scalar::is_rational_value() const { return kind_ != RingKind::ComplexFloat && sgn(b_) == 0; }

static real to_real(const mpq_class& q) {
    // mpq -> long double without losing range for moderate sizes
    if (sgn(q) == 0) return 0;
    long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
    double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
    return std::ldexp(static_cast<real>(mn) / static_cast<real>(md), static_cast<int>(en - ed));
}

cplx Scalar::to_complex() const {
    switch (kind_) {
        case RingKind::Rational: return {to_real(a_), 0};
        case RingKind::QuadExt: {
            real ra = to_real(a_), rb = to_real(b_);
            if (d_ > 0) return {ra + rb * std::sqrt(static_cast<real>(d_)), 0};
            return {ra, rb * std::sqrt(static_cast<real>(-d_))};
        }
        case RingKind::ComplexFloat: return z_;
    }
    return {};
}

std::size_t Scalar::bit_size() const {
    if (kind_ == RingKind::ComplexFloat) return 64;
    auto bits = [](const mpq_class& q) {
        return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
    };
    return bits(a_) + (kind_ == RingKind::QuadExt ? bits(b_) : 0);
}

void Scalar::promote_to(const Ring& r) {
    if (r.kind == kind_ && (kind_ != RingKind::QuadExt || r.d == d_)) return;
    if (r.kind == RingKind::ComplexFloat) {
        z_ = to_complex();
        a_ = 0;
        b_ = 0;
        kind_ = RingKind::ComplexFloat;
        d_ = 0;
        return;
    }
    if (kind_ == RingKind::Rational && r.kind == RingKind::QuadExt) {
        kind_ = RingKind::QuadExt;
        d_ = r.d;
        return;
    }
    if (kind_ == RingKind::QuadExt && r.kind == RingKind::Rational && sgn(b_) == 0) {
        kind_ = RingKind::Rational;
        d_ = 0;
        return;
    }
    throw Error(ErrorCode::Domain, "cannot convert " + ring().name() + " value to " + r.name());
}

Scalar Scalar::to_ring(const Ring& r) const {
    Scalar s = *this;
    s.promote_to(r);
    return s;
}

Scalar Scalar::conjugate() const {
    if (kind_ != RingKind::QuadExt) return *this;
    Scalar s = *this;
    s.b_ = -b_;
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error(ErrorCode::Domain, "division by zero");
    switch (kind_) {
        case RingKind::Rational: return Scalar(mpq_class(1) / a_);
        case RingKind::QuadExt: {
            mpq_class n = a_ * a_ - b_ * b_ * d_;
            return quad(a_ / n, -b_ / n, d_);
        }
        case RingKind::ComplexFloat: return complex(cplx(1) / z_);
    }
    return {};
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    s.a_ = -a_;
    s.b_ = -b_;
    s.z_ = -z_;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (kind_ == RingKind::Rational && o.kind_ == RingKind::Rational) {
        a_ += o.a_;
        return *this;
    }
    Ring r = join(ring(), o.ring());
    promote_to(r);
    Scalar t = o.to_ring(r);
    a_ += t.a_;
    b_ += t.b_;
    z_ += t.z_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    if (kind_ == RingKind::Rational && o.kind_ == RingKind::Rational) {
        a_ -= o.a_;
        return *this;
    }
    return *this += -o;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (kind_ == RingKind::Rational && o.kind_ == RingKind::Rational) {
        a_ *= o.a_;
        return *this;
    }
    Ring r = join(ring(), o.ring());
    promote_to(r);
    Scalar t = o.to_ring(r);
    switch (r.kind) {
        case RingKind::QuadExt: {
            mpq_class na = a_ * t.a_ + b_ * t.b_ * d_;
            mpq_class nb = a_ * t.b_ + b_ * t.a_;
            a_ = std::move(na);
            b_ = std::move(nb);
            break;
        }
        case RingKind::ComplexFloat: z_ *= t.z_; break;
        case RingKind::Rational: a_ *= t.a_; break;
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (kind_ == RingKind::Rational && o.kind_ == RingKind::Rational) {
        if (sgn(o.a_) == 0) throw Error(ErrorCode::Domain, "division by zero");
        a_ /= o.a_;
        return *this;
    }
    return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.kind_ == b.kind_ && a.d_ == b.d_) return a.a_ == b.a_ && a.b_ == b.b_ && a.z_ == b.z_;
    Ring r;
    try {
        r = join(a.ring(), b.ring());
    } catch (const Error&) {
        return a.is_rational_value() && b.is_rational_value() && a.a_ == b.a_;
    }
    Scalar x = a.to_ring(r), y = b.to_ring(r);
    return x.a_ == y.a_ && x.b_ == y.b_ && x.z_ == y.z_;
}

bool Scalar::is_compound() const {
    if (kind_ == RingKind::Rational) return false;
    return true;
}

static std::string fmt_real(real v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.21Lg", v);
    return buf;
}

std::string Scalar::to_string() const {
    switch (kind_) {
        case RingKind::Rational: return a_.get_str();
        case RingKind::QuadExt: {
            std::string rad = "sqrt(" + std::to_string(d_) + ")";
            std::string s = "(" + a_.get_str();
            if (sgn(b_) < 0)
                s += " - " + mpq_class(-b_).get_str() + "*" + rad;
            else
                s += " + " + b_.get_str() + "*" + rad;
            return s + ")";
        }
        case RingKind::ComplexFloat:
            return "(" + fmt_real(z_.real()) + (z_.imag() < 0 ? " - " : " + ") + fmt_real(std::abs(z_.imag())) + "*I)";
    }
    return "?";
}

bool approx_equal(const Scalar& a, const Scalar& b, real rel_tol) {
    if (a.ring().exact() && b.ring().exact()) return a == b;
    cplx x = a.to_complex(), y = b.to_complex();
    real scale = std::max<real>({std::abs(x), std::abs(y), 1});
    return std::abs(x - y) <= rel_tol * scale;
}

}  // namespace webcurv
