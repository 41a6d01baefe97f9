#include "poly.hpp"

#include <cctype>
#include <cstdlib>

namespace webcurv {

namespace {

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& vars, const Ring& ring)
        : s_(text), vars_(vars), ring_(ring) {}

    MultiPoly run() {
        MultiPoly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    MultiPoly constant(const Scalar& c) const { return MultiPoly::constant(vars_, c.to_ring(join(c.ring(), ring_))); }

    MultiPoly expr() {
        MultiPoly acc(vars_, ring_);
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        MultiPoly t = term();
        acc += negate ? -t : t;
        while (true) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                break;
        }
        return acc;
    }

    MultiPoly term() {
        MultiPoly acc = factor();
        while (true) {
            if (accept('*')) {
                acc *= factor();
            } else if (accept('/')) {
                std::size_t at = pos_;
                MultiPoly d = factor();
                if (!d.is_constant() || d.is_zero()) {
                    pos_ = at;
                    fail("division only by a nonzero constant");
                }
                acc *= d.constant_term().inverse();
            } else {
                break;
            }
        }
        return acc;
    }

    MultiPoly factor() {
        MultiPoly b = base();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            std::string digits(s_.substr(start, pos_ - start));
            if (digits.size() > 3 || std::stoi(digits) > kMaxExponent) {
                pos_ = start;
                fail("exponent too large");
            }
            b = b.pow(static_cast<unsigned>(std::stoi(digits)));
        }
        return b;
    }

    MultiPoly base() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (name == "sqrt") return sqrt_call(start);
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == name) return MultiPoly::variable(vars_, i, ring_);
            if (name == "I" && ring_.kind == RingKind::ComplexFloat) return constant(Scalar::complex({0, 1}));
            pos_ = start;
            fail("unknown symbol '" + name + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    MultiPoly number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        bool decimal = false;
        if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
            decimal = true;
            if (s_[pos_] == '.') {
                ++pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            }
            if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
                ++pos_;
                if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            }
        }
        std::string tok(s_.substr(start, pos_ - start));
        if (decimal) {
            if (ring_.kind != RingKind::ComplexFloat) {
                pos_ = start;
                fail("decimal literal outside the complex ring");
            }
            return constant(Scalar::complex({std::strtold(tok.c_str(), nullptr), 0}));
        }
        mpq_class q;
        q.get_num().set_str(tok, 10);
        q.get_den() = 1;
        if (ring_.kind == RingKind::ComplexFloat) return constant(Scalar(q).to_ring(ring_));
        return constant(Scalar(q));
    }

    MultiPoly sqrt_call(std::size_t start) {
        expect('(');
        skip();
        bool neg = accept('-');
        skip();
        std::size_t ds = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (ds == pos_) fail("sqrt expects an integer");
        if (pos_ - ds > 12) fail("sqrt argument too large");
        long d = std::stol(std::string(s_.substr(ds, pos_ - ds)));
        if (neg) d = -d;
        expect(')');
        Scalar v = Scalar::sqrt_of(d);
        if (v.kind() == RingKind::QuadExt) {
            if (ring_.kind == RingKind::ComplexFloat) return constant(v.to_ring(ring_));
            if (ring_.kind != RingKind::QuadExt || ring_.d != v.ring().d) {
                pos_ = start;
                fail("sqrt(" + std::to_string(d) + ") not available in ring " + ring_.name());
            }
        }
        return constant(v);
    }

    std::string_view s_;
    const std::vector<std::string>& vars_;
    Ring ring_;
    std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars, const Ring& ring) {
    MultiPoly p = Parser(text, vars, ring).run();
    if (p.ring() != ring) p = p.to_ring(ring);
    return p;
}

}  // namespace webcurv
