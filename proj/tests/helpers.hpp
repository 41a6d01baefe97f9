#pragma once

#include "poly.hpp"

#include <random>

namespace testing_support {

using namespace webcurv;

inline Scalar random_coefficient(std::mt19937_64& rng, const Ring& ring) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
    Scalar a = Scalar::fraction(num(rng), den(rng));
    if (ring.kind == RingKind::QuadExt) return a + Scalar::fraction(num(rng), den(rng)) * Scalar::sqrt_of(ring.d);
    if (ring.kind == RingKind::ComplexFloat) return Scalar::complex({(real)num(rng) / 3, (real)num(rng) / 5});
    return a;
}

inline MultiPoly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, const Ring& ring,
                             int max_deg, int nterms) {
    MultiPoly p(vars, ring);
    std::uniform_int_distribution<int> e(0, max_deg);
    for (int t = 0; t < nterms; ++t) {
        std::vector<int> ex(vars.size());
        int budget = max_deg;
        for (auto& x : ex) {
            x = std::min(e(rng), budget);
            budget -= x;
        }
        p.add_term(make_monomial(ex), random_coefficient(rng, ring));
    }
    return p;
}

inline MultiPoly P(const std::string& s, const std::vector<std::string>& vars, Ring ring = Ring::rational()) {
    return parse_poly(s, vars, ring);
}

}  // namespace testing_support
