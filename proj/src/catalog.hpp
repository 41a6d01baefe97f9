#pragma once

#include "web_model.hpp"

#include <optional>

namespace webcurv {

Foliation fermat_foliation(int d);
Foliation fermat_pencil4(const Scalar& t);
Foliation fermat_pencil4_z1();  // the member at t = infinity
Foliation hesse_h4();
Foliation hilbert_h5();
Foliation hessian_h7();
ProjWeb triangular_web(int p, int q);
Scalar foliated_genus(int d);

struct FirstIntegral {
    MultiPoly num, den;  // homogeneous in (x,y,z), same degree
};
FirstIntegral fermat_first_integral(int d);        // z^{d-1}(y^{d-1}-x^{d-1}) / y^{d-1}(x^{d-1}-z^{d-1})
FirstIntegral fermat_first_integral_intro(int d);  // x^{d-1}(y^{d-1}-z^{d-1}) / y^{d-1}(x^{d-1}-z^{d-1})
// X(num) den - num X(den) == 0 for the homogeneous field of f.
bool is_first_integral(const Foliation& f, const FirstIntegral& fi);

struct CatalogEntry {
    std::string name;
    std::string description;
    int degree;
    std::optional<int> table1_radial;
    std::optional<int> invariant_lines;
};

const std::vector<CatalogEntry>& catalog_entries();
// Names: F2..F6 (any Fd), H4, H5, H7, pencil4:<t>, Z1.
Foliation catalog_foliation(const std::string& name);

}  // namespace webcurv
