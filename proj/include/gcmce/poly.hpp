#ifndef GCMCE_POLY_HPP
#define GCMCE_POLY_HPP

#include <utility>

#include "gcmce/gf.hpp"

namespace gcmce {

// Polynomials over a FieldTower as coefficient vectors, low degree first.
// The zero polynomial is the empty vector; degree of zero is -1.

int poly_deg(const Vec& a);
Vec poly_trim(Vec a);
Vec poly_add(const FieldTower& f, const Vec& a, const Vec& b);
Vec poly_sub(const FieldTower& f, const Vec& a, const Vec& b);
Vec poly_mul(const FieldTower& f, const Vec& a, const Vec& b);
Vec poly_scale(const FieldTower& f, const Vec& a, gf_t s);
std::pair<Vec, Vec> poly_divmod(const FieldTower& f, const Vec& a, const Vec& b);
gf_t poly_eval(const FieldTower& f, const Vec& a, gf_t x);
// Unique interpolating polynomial of degree < points.size() (Lagrange).
Vec poly_interpolate(const FieldTower& f, const Vec& xs, const Vec& ys);

}  // namespace gcmce

#endif
