#include "gcmce/poly.hpp"

#include "gcmce/errors.hpp"

namespace gcmce {

int poly_deg(const Vec& a) {
    for (std::size_t i = a.size(); i > 0; --i)
        if (a[i - 1] != 0) return static_cast<int>(i - 1);
    return -1;
}

Vec poly_trim(Vec a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Vec poly_add(const FieldTower& f, const Vec& a, const Vec& b) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        gf_t x = i < a.size() ? a[i] : 0;
        gf_t y = i < b.size() ? b[i] : 0;
        r[i] = f.add(x, y);
    }
    return poly_trim(std::move(r));
}

Vec poly_sub(const FieldTower& f, const Vec& a, const Vec& b) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        gf_t x = i < a.size() ? a[i] : 0;
        gf_t y = i < b.size() ? b[i] : 0;
        r[i] = f.sub(x, y);
    }
    return poly_trim(std::move(r));
}

Vec poly_mul(const FieldTower& f, const Vec& a, const Vec& b) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
        }
    }
    return poly_trim(std::move(r));
}

Vec poly_scale(const FieldTower& f, const Vec& a, gf_t s) {
    if (s == 0) return {};
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], s);
    return poly_trim(std::move(r));
}

std::pair<Vec, Vec> poly_divmod(const FieldTower& f, const Vec& a, const Vec& b) {
    int db = poly_deg(b);
    if (db < 0) throw Error("polynomial division by zero");
    Vec rem = poly_trim(a);
    int da = poly_deg(rem);
    if (da < db) return {Vec{}, rem};
    Vec quot(da - db + 1, 0);
    gf_t lead_inv = f.inv(b[db]);
    for (int i = da; i >= db; --i) {
        if (static_cast<std::size_t>(i) >= rem.size() || rem[i] == 0) continue;
        gf_t factor = f.mul(rem[i], lead_inv);
        quot[i - db] = factor;
        for (int j = 0; j <= db; ++j)
            rem[i - db + j] = f.sub(rem[i - db + j], f.mul(factor, b[j]));
    }
    return {poly_trim(std::move(quot)), poly_trim(std::move(rem))};
}

gf_t poly_eval(const FieldTower& f, const Vec& a, gf_t x) {
    gf_t r = 0;
    for (std::size_t i = a.size(); i > 0; --i) r = f.add(f.mul(r, x), a[i - 1]);
    return r;
}

Vec poly_interpolate(const FieldTower& f, const Vec& xs, const Vec& ys) {
    if (xs.size() != ys.size()) throw DimensionMismatch("interpolation point mismatch");
    Vec acc;  // running interpolant
    Vec basis{1};  // product of (x - xs[j]) for processed j
    for (std::size_t i = 0; i < xs.size(); ++i) {
        gf_t cur = poly_eval(f, acc, xs[i]);
        gf_t want = ys[i];
        if (cur != want) {
            gf_t denom = poly_eval(f, basis, xs[i]);
            gf_t scale = f.div(f.sub(want, cur), denom);
            acc = poly_add(f, acc, poly_scale(f, basis, scale));
        }
        basis = poly_mul(f, basis, Vec{f.neg(xs[i]), 1});
    }
    return acc;
}

}  // namespace gcmce
