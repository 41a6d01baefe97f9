#include "poly.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace webcurv {

namespace {
std::atomic<std::size_t> g_bit_cap{1'000'000};
}

std::size_t bit_cap() { return g_bit_cap.load(); }
void set_bit_cap(std::size_t bits) { g_bit_cap.store(bits); }

Monomial make_monomial(std::span<const int> exps) {
    if (exps.size() > kMaxVars) throw Error(ErrorCode::Limit, "too many variables");
    Monomial m = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] < 0 || exps[i] > kMaxExponent)
            throw Error(ErrorCode::Limit, "exponent out of range: " + std::to_string(exps[i]));
        m |= var_monomial(i, exps[i]);
    }
    return m;
}

int total_degree(Monomial m) {
    int d = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) d += exponent(m, i);
    return d;
}

MultiPoly::MultiPoly(std::vector<std::string> vars, Ring ring) : vars_(std::move(vars)), ring_(ring) {
    if (vars_.size() > kMaxVars) throw Error(ErrorCode::Limit, "at most 8 variables supported");
}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const Scalar& c) {
    MultiPoly p(std::move(vars), c.ring());
    p.add_term(0, c);
    return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::size_t i, Ring ring) {
    MultiPoly p(std::move(vars), ring);
    if (i >= p.nvars()) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
    p.add_term(var_monomial(i, 1), Scalar::one(ring));
    return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, const std::string& name, Ring ring) {
    MultiPoly p(std::move(vars), ring);
    std::size_t i = p.var_index(name);
    p.add_term(var_monomial(i, 1), Scalar::one(ring));
    return p;
}

std::size_t MultiPoly::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw Error(ErrorCode::InvalidArgument, "unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - vars_.begin());
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

Scalar MultiPoly::constant_term() const { return coefficient(0); }

Scalar MultiPoly::coefficient(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar::zero(ring_) : it->second;
}

const Scalar& MultiPoly::leading_coefficient() const {
    if (terms_.empty()) throw Error(ErrorCode::Domain, "leading coefficient of zero polynomial");
    return terms_.begin()->second;
}

Monomial MultiPoly::leading_monomial() const {
    if (terms_.empty()) throw Error(ErrorCode::Domain, "leading monomial of zero polynomial");
    return terms_.begin()->first;
}

int MultiPoly::degree() const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
}

int MultiPoly::degree(std::size_t var) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) d = std::max(d, exponent(m, var));
    return d;
}

bool MultiPoly::is_homogeneous(std::span<const std::size_t> group, int* deg) const {
    int want = -1;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (auto v : group) d += exponent(m, v);
        if (want < 0) want = d;
        else if (d != want) return false;
    }
    if (deg) *deg = want;
    return true;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
    int n = degree(var);
    std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(n + 1, 0)), MultiPoly(vars_, ring_));
    for (const auto& [m, c] : terms_) {
        int e = exponent(m, var);
        out[static_cast<std::size_t>(e)].terms_.emplace(set_exponent(m, var, 0), c);
    }
    return out;
}

MultiPoly MultiPoly::from_coefficients(std::span<const MultiPoly> coeffs, std::size_t var) {
    if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "empty coefficient list");
    MultiPoly out(coeffs[0].vars_, coeffs[0].ring_);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (j > kMaxExponent) throw Error(ErrorCode::Limit, "degree cap exceeded");
        out.ring_ = join(out.ring_, coeffs[j].ring_);
        for (const auto& [m, c] : coeffs[j].terms_) {
            if (exponent(m, var) != 0) throw Error(ErrorCode::InvalidArgument, "coefficient involves the main variable");
            out.add_term(m | var_monomial(var, static_cast<int>(j)), c);
        }
    }
    return out;
}

MultiPoly MultiPoly::leading_coefficient_in(std::size_t var) const {
    int n = degree(var);
    MultiPoly out(vars_, ring_);
    for (const auto& [m, c] : terms_)
        if (exponent(m, var) == n) out.terms_.emplace(set_exponent(m, var, 0), c);
    return out;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
    MultiPoly out(vars_, ring_);
    for (const auto& [m, c] : terms_) {
        int e = exponent(m, var);
        if (e == 0) continue;
        out.add_term(set_exponent(m, var, e - 1), c * Scalar(e));
    }
    return out;
}

MultiPoly MultiPoly::substitute(std::size_t var, const MultiPoly& value) const {
    std::vector<MultiPoly> images;
    images.reserve(nvars());
    for (std::size_t i = 0; i < nvars(); ++i)
        images.push_back(i == var ? value : variable(vars_, i, ring_));
    return compose(images);
}

MultiPoly MultiPoly::substitute(std::size_t var, const Scalar& value) const {
    MultiPoly out(vars_, join(ring_, value.ring()));
    std::vector<Scalar> powers{Scalar::one(out.ring_)};
    for (const auto& [m, c] : terms_) {
        int e = exponent(m, var);
        while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * value);
        out.add_term(set_exponent(m, var, 0), c * powers[static_cast<std::size_t>(e)]);
    }
    return out;
}

MultiPoly MultiPoly::compose(std::span<const MultiPoly> images) const {
    if (images.size() != nvars()) throw Error(ErrorCode::InvalidArgument, "compose: wrong number of images");
    if (images.empty()) return *this;
    const auto& nv = images[0].vars_;
    Ring r = ring_;
    for (const auto& im : images) {
        if (im.vars_ != nv) throw Error(ErrorCode::InvalidArgument, "compose: images over different variables");
        r = join(r, im.ring_);
    }
    std::vector<std::vector<MultiPoly>> powers(nvars());
    auto power = [&](std::size_t i, int e) -> const MultiPoly& {
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(constant(nv, Scalar::one(r)));
        while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * images[i]);
        return pw[static_cast<std::size_t>(e)];
    };
    MultiPoly out(nv, r);
    // Horner in the first variable keeps intermediate products small.
    auto by_first = coefficients_in(0);
    for (std::size_t j = by_first.size(); j-- > 0;) {
        MultiPoly acc(nv, r);
        for (const auto& [m, c] : by_first[j].terms_) {
            MultiPoly t = constant(nv, c.to_ring(r));
            for (std::size_t i = 1; i < nvars(); ++i) {
                int e = exponent(m, i);
                if (e) t = t * power(i, e);
            }
            acc += t;
        }
        out = out * power(0, 1) + acc;
    }
    return out;
}

MultiPoly MultiPoly::rename(std::vector<std::string> vars) const {
    if (vars.size() != vars_.size()) throw Error(ErrorCode::InvalidArgument, "rename: variable count mismatch");
    MultiPoly out = *this;
    out.vars_ = std::move(vars);
    return out;
}

MultiPoly MultiPoly::embed(const std::vector<std::string>& vars) const {
    std::vector<int> target(nvars(), -1);
    for (std::size_t i = 0; i < nvars(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), vars_[i]);
        if (it != vars.end()) target[i] = static_cast<int>(it - vars.begin());
    }
    MultiPoly out(vars, ring_);
    for (const auto& [m, c] : terms_) {
        Monomial nm = 0;
        for (std::size_t i = 0; i < nvars(); ++i) {
            int e = exponent(m, i);
            if (!e) continue;
            if (target[i] < 0) throw Error(ErrorCode::InvalidArgument, "embed: variable '" + vars_[i] + "' not in target list");
            nm |= var_monomial(static_cast<std::size_t>(target[i]), e);
        }
        out.add_term(nm, c);
    }
    return out;
}

MultiPoly MultiPoly::to_ring(const Ring& r) const {
    MultiPoly out(vars_, r);
    for (const auto& [m, c] : terms_) out.add_term(m, c.to_ring(r));
    return out;
}

MultiPoly MultiPoly::map_coefficients(const std::function<Scalar(const Scalar&)>& f) const {
    MultiPoly out(vars_, ring_);
    for (const auto& [m, c] : terms_) {
        Scalar v = f(c);
        out.ring_ = join(out.ring_, v.ring());
        out.add_term(m, v);
    }
    return out;
}

Scalar MultiPoly::eval(std::span<const Scalar> point) const {
    if (point.size() != nvars()) throw Error(ErrorCode::InvalidArgument, "eval: wrong point dimension");
    Scalar acc = Scalar::zero(ring_);
    std::vector<std::vector<Scalar>> pw(nvars());
    for (const auto& [m, c] : terms_) {
        Scalar t = c;
        for (std::size_t i = 0; i < nvars(); ++i) {
            int e = exponent(m, i);
            if (!e) continue;
            auto& p = pw[i];
            if (p.empty()) p.push_back(Scalar(1));
            while (static_cast<int>(p.size()) <= e) p.push_back(p.back() * point[i]);
            t *= p[static_cast<std::size_t>(e)];
        }
        acc += t;
    }
    return acc;
}

cplx MultiPoly::eval(std::span<const cplx> point) const {
    if (point.size() != nvars()) throw Error(ErrorCode::InvalidArgument, "eval: wrong point dimension");
    cplx acc = 0;
    for (const auto& [m, c] : terms_) {
        cplx t = c.to_complex();
        for (std::size_t i = 0; i < nvars(); ++i) {
            int e = exponent(m, i);
            for (int k = 0; k < e; ++k) t *= point[i];
        }
        acc += t;
    }
    return acc;
}

void MultiPoly::add_term(Monomial m, const Scalar& c) {
    if (c.is_zero()) return;
    if (c.ring() != ring_) ring_ = join(ring_, c.ring());
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
    if (vars_ != o.vars_) {
        std::string a, b;
        for (auto& v : vars_) a += v + ",";
        for (auto& v : o.vars_) b += v + ",";
        throw Error(ErrorCode::InvalidArgument, "polynomials over different variable lists (" + a + ") vs (" + b + ")");
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (vars_.empty() && !o.vars_.empty() && is_constant()) {
        Scalar c = constant_term();
        *this = o;
        add_term(0, c);
        return *this;
    }
    if (o.vars_.empty() && o.is_constant()) {
        add_term(0, o.constant_term());
        return *this;
    }
    check_compatible(o);
    ring_ = join(ring_, o.ring_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_.empty() && a.is_constant()) return b * a.constant_term();
    if (b.vars_.empty() && b.is_constant()) return a * b.constant_term();
    a.check_compatible(b);
    MultiPoly out(a.vars_, join(a.ring_, b.ring_));
    if (a.is_zero() || b.is_zero()) return out;
    for (std::size_t i = 0; i < a.nvars(); ++i)
        if (a.degree(i) + b.degree(i) > kMaxExponent)
            throw Error(ErrorCode::Limit, "degree cap exceeded in variable " + a.vars_[i]);
    const MultiPoly& small = a.size() <= b.size() ? a : b;
    const MultiPoly& big = a.size() <= b.size() ? b : a;
    for (const auto& [ms, cs] : small.terms_) {
        auto hint = out.terms_.end();
        for (const auto& [mb, cb] : big.terms_) {
            Monomial m = ms + mb;
            hint = out.terms_.lower_bound(m);
            if (hint != out.terms_.end() && hint->first == m) {
                hint->second += cs * cb;
                if (hint->second.is_zero()) hint = out.terms_.erase(hint);
            } else {
                hint = out.terms_.emplace_hint(hint, m, cs * cb);
            }
        }
    }
    if (out.ring_.exact() && out.max_bit_size() > bit_cap())
        throw Error(ErrorCode::Limit, "coefficient bit-size cap exceeded");
    return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        ring_ = join(ring_, c.ring());
        return *this;
    }
    ring_ = join(ring_, c.ring());
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out = *this;
    for (auto& [m, v] : out.terms_) v = -v;
    return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [m, c] : a.terms_) {
        if (it->first != m || !(it->second == c)) return false;
        ++it;
    }
    return true;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly result = constant(vars_, Scalar::one(ring_));
    MultiPoly base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

MultiPoly MultiPoly::monic() const {
    if (is_zero()) return *this;
    Scalar inv = leading_coefficient().inverse();
    MultiPoly out = *this;
    for (auto& [m, v] : out.terms_) v *= inv;
    return out;
}

std::size_t MultiPoly::max_bit_size() const {
    std::size_t b = 0;
    for (const auto& [m, c] : terms_) b = std::max(b, c.bit_size());
    return b;
}

real MultiPoly::max_abs_coefficient() const {
    real b = 0;
    for (const auto& [m, c] : terms_) b = std::max(b, c.magnitude());
    return b;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string mono;
        for (std::size_t i = 0; i < nvars(); ++i) {
            int e = exponent(m, i);
            if (!e) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[i];
            if (e > 1) mono += "^" + std::to_string(e);
        }
        bool negative = c.kind() == RingKind::Rational && sgn(c.rat()) < 0;
        Scalar mag = negative ? -c : c;
        std::string coef;
        if (mono.empty())
            coef = mag.to_string();
        else if (!mag.is_one())
            coef = mag.to_string() + "*";
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        out += coef + mono;
        first = false;
    }
    return out;
}

}  // namespace webcurv
