#include "gcmce/gf.hpp"

#include <algorithm>
#include <string>

namespace gcmce {

namespace {

// ---- polynomial helpers over a coefficient field given by add/sub/mul/inv
// callables on gf_t; used for modulus search at both tower levels.

template <class F>
unsigned poly_deg(const std::vector<gf_t>& a, const F&) {
    for (std::size_t i = a.size(); i > 0; --i)
        if (a[i - 1] != 0) return static_cast<unsigned>(i - 1);
    return 0;
}

// Remainder of a mod b (b monic-normalized inside), coefficient ops from F.
template <class F>
std::vector<gf_t> poly_rem(std::vector<gf_t> a, const std::vector<gf_t>& b, const F& f) {
    unsigned db = poly_deg(b, f);
    gf_t lead_inv = f.inv(b[db]);
    for (std::size_t i = a.size(); i-- > db;) {
        if (a[i] == 0) continue;
        gf_t factor = f.mul(a[i], lead_inv);
        for (unsigned j = 0; j <= db; ++j) {
            a[i - db + j] = f.sub(a[i - db + j], f.mul(factor, b[j]));
        }
    }
    a.resize(db == 0 ? 1 : db);
    return a;
}

template <class F>
bool poly_is_zero(const std::vector<gf_t>& a) {
    return std::all_of(a.begin(), a.end(), [](gf_t c) { return c == 0; });
}

// Exact irreducibility by trial division: a monic polynomial of degree m is
// reducible iff it has a monic divisor of degree 1..m/2.
template <class F>
bool poly_irreducible(const std::vector<gf_t>& cand, gf_t q, const F& f) {
    unsigned m = poly_deg(cand, f);
    if (m == 1) return true;
    for (unsigned d = 1; 2 * d <= m; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= q;
        std::vector<gf_t> div(d + 1, 0);
        div[d] = 1;
        for (std::uint64_t v = 0; v < count; ++v) {
            std::uint64_t t = v;
            for (unsigned i = 0; i < d; ++i) {
                div[i] = static_cast<gf_t>(t % q);
                t /= q;
            }
            auto r = poly_rem(cand, div, f);
            if (poly_is_zero<F>(r)) return false;
        }
    }
    return true;
}

// First (in canonical integer order of the non-leading coefficients) monic
// irreducible polynomial of degree m, coefficients enumerated low to high.
template <class F>
std::vector<gf_t> canonical_irreducible(gf_t q, unsigned m, const F& f) {
    std::vector<gf_t> cand(m + 1, 0);
    cand[m] = 1;
    std::uint64_t count = 1;
    for (unsigned i = 0; i < m; ++i) count *= q;
    for (std::uint64_t v = 0; v < count; ++v) {
        std::uint64_t t = v;
        for (unsigned i = 0; i < m; ++i) {
            cand[i] = static_cast<gf_t>(t % q);
            t /= q;
        }
        if (poly_irreducible(cand, q, f)) return cand;
    }
    throw Error("no irreducible polynomial found (unreachable)");
}

struct PrimeOps {
    gf_t p;
    gf_t add(gf_t a, gf_t b) const { return (a + b) % p; }
    gf_t sub(gf_t a, gf_t b) const { return (a + p - b % p) % p; }
    gf_t mul(gf_t a, gf_t b) const {
        return static_cast<gf_t>((std::uint64_t)a * b % p);
    }
    gf_t inv(gf_t a) const {
        // Fermat; p is prime.
        gf_t r = 1, base = a % p;
        for (std::uint64_t e = p - 2; e; e >>= 1) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
        }
        return r;
    }
};

struct SmallFieldOps {
    const SmallField* f;
    gf_t add(gf_t a, gf_t b) const { return f->add(a, b); }
    gf_t sub(gf_t a, gf_t b) const { return f->sub(a, b); }
    gf_t mul(gf_t a, gf_t b) const { return f->mul(a, b); }
    gf_t inv(gf_t a) const { return f->inv(a); }
};

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

// ---------------------------------------------------------------- SmallField

SmallField::SmallField(gf_t q) : q_(q) {
    if (q < 2) throw NotPrimePower("field size must be at least 2, got " + std::to_string(q));
    gf_t p = 0;
    for (gf_t d = 2; (std::uint64_t)d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q;  // q itself prime
    std::uint64_t v = q;
    e_ = 0;
    while (v % p == 0) {
        v /= p;
        ++e_;
    }
    if (v != 1)
        throw NotPrimePower(std::to_string(q) + " is not a prime power");
    p_ = p;
    if (e_ > 1) {
        PrimeOps ops{p_};
        mod_ = canonical_irreducible(p_, e_, ops);
    }
    // 2D multiplication table for small base fields; larger ones multiply
    // through the polynomial representation.
    if (e_ > 1 && q_ <= 1024) {
        mul_lut_.assign((std::size_t)q_ * q_, 0);
        for (gf_t a = 0; a < q_; ++a)
            for (gf_t b = a; b < q_; ++b) {
                gf_t r = mul_nolut(a, b);
                mul_lut_[(std::size_t)a * q_ + b] = r;
                mul_lut_[(std::size_t)b * q_ + a] = r;
            }
    }
}

gf_t SmallField::add(gf_t a, gf_t b) const {
    if (e_ == 1) return (gf_t)(((std::uint64_t)a + b) % p_);
    if (p_ == 2) return a ^ b;
    gf_t r = 0, mul = 1;
    for (unsigned i = 0; i < e_; ++i) {
        gf_t da = (a / mul) % p_ , db = (b / mul) % p_;
        r += ((da + db) % p_) * mul;
        mul *= p_;
    }
    return r;
}

gf_t SmallField::neg(gf_t a) const {
    if (e_ == 1) return (gf_t)((p_ - a % p_) % p_);
    if (p_ == 2) return a;
    gf_t r = 0, mul = 1;
    for (unsigned i = 0; i < e_; ++i) {
        gf_t da = (a / mul) % p_;
        r += ((p_ - da) % p_) * mul;
        mul *= p_;
    }
    return r;
}

gf_t SmallField::sub(gf_t a, gf_t b) const { return add(a, neg(b)); }

gf_t SmallField::mul_nolut(gf_t a, gf_t b) const {
    if (e_ == 1) return (gf_t)((std::uint64_t)a * b % p_);
    // digits base p
    std::vector<gf_t> da(e_), db(e_), prod(2 * e_ - 1, 0);
    gf_t ta = a, tb = b;
    for (unsigned i = 0; i < e_; ++i) {
        da[i] = ta % p_;
        ta /= p_;
        db[i] = tb % p_;
        tb /= p_;
    }
    for (unsigned i = 0; i < e_; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < e_; ++j)
            prod[i + j] = (gf_t)((prod[i + j] + (std::uint64_t)da[i] * db[j]) % p_);
    }
    // reduce by monic modulus
    for (unsigned i = 2 * e_ - 2; i >= e_; --i) {
        gf_t c = prod[i];
        if (c != 0) {
            prod[i] = 0;
            for (unsigned j = 0; j < e_; ++j) {
                std::uint64_t sub = (std::uint64_t)c * mod_[j] % p_;
                prod[i - e_ + j] = (gf_t)((prod[i - e_ + j] + p_ - sub) % p_);
            }
        }
        if (i == e_) break;
    }
    gf_t r = 0, mul = 1;
    for (unsigned i = 0; i < e_; ++i) {
        r += prod[i] * mul;
        mul *= p_;
    }
    return r;
}

gf_t SmallField::mul(gf_t a, gf_t b) const {
    if (e_ == 1) return (gf_t)((std::uint64_t)a * b % p_);
    if (!mul_lut_.empty()) return mul_lut_[(std::size_t)a * q_ + b];
    return mul_nolut(a, b);
}

gf_t SmallField::pow(gf_t a, std::uint64_t n) const {
    gf_t r = 1;
    gf_t base = a;
    while (n) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

gf_t SmallField::inv(gf_t a) const {
    if (a == 0) throw Error("division by zero in GF(" + std::to_string(q_) + ")");
    return pow(a, q_ - 2);
}

// ---------------------------------------------------------------- FieldTower

FieldTower::FieldTower(SmallField base, unsigned m, Vec mod)
    : base_(std::move(base)), m_(m), mod_(std::move(mod)) {
    order_ = 1;
    for (unsigned i = 0; i < m_; ++i) order_ *= base_.q();
}

FieldPtr FieldTower::make(gf_t q, unsigned m) {
    if (m == 0) throw DegreeTooLarge("extension degree must be positive");
    SmallField base(q);
    std::uint64_t order = 1;
    for (unsigned i = 0; i < m; ++i) {
        order *= q;
        if (order > kMaxFieldOrder)
            throw DegreeTooLarge("q^m exceeds the desk-scale cap 2^24");
    }
    SmallFieldOps ops{&base};
    Vec mod = canonical_irreducible(q, m, ops);
    return FieldPtr(new FieldTower(std::move(base), m, std::move(mod)));
}

FieldPtr FieldTower::make(gf_t q, unsigned m, std::vector<gf_t> modulus) {
    if (m == 0) throw DegreeTooLarge("extension degree must be positive");
    SmallField base(q);
    std::uint64_t order = 1;
    for (unsigned i = 0; i < m; ++i) {
        order *= q;
        if (order > kMaxFieldOrder)
            throw DegreeTooLarge("q^m exceeds the desk-scale cap 2^24");
    }
    if (modulus.size() != m + 1 || modulus[m] != 1)
        throw Error("modulus must be monic of degree m");
    SmallFieldOps ops{&base};
    if (!poly_irreducible(modulus, q, ops)) throw Error("modulus is reducible");
    return FieldPtr(new FieldTower(std::move(base), m, std::move(modulus)));
}

FieldPtr make_tower(gf_t q, unsigned m) { return FieldTower::make(q, m); }

bool FieldTower::same_field(const FieldTower& other) const {
    return q() == other.q() && m_ == other.m_ && mod_ == other.mod_;
}

Vec FieldTower::coeffs(gf_t a) const {
    Vec c(m_);
    std::uint64_t t = a;
    for (unsigned i = 0; i < m_; ++i) {
        c[i] = static_cast<gf_t>(t % base_.q());
        t /= base_.q();
    }
    return c;
}

gf_t FieldTower::from_coeffs(const Vec& c) const {
    std::uint64_t r = 0, mul = 1;
    for (unsigned i = 0; i < m_; ++i) {
        r += (std::uint64_t)c[i] * mul;
        mul *= base_.q();
    }
    return static_cast<gf_t>(r);
}

Vec FieldTower::polynomial_basis() const {
    Vec b(m_);
    std::uint64_t v = 1;
    for (unsigned i = 0; i < m_; ++i) {
        b[i] = static_cast<gf_t>(v);
        v *= base_.q();
    }
    return b;
}

gf_t FieldTower::add(gf_t a, gf_t b) const {
    if (characteristic() == 2) return a ^ b;  // all digits are char-2 values
    gf_t q = base_.q();
    std::uint64_t r = 0, mul = 1, ta = a, tb = b;
    for (unsigned i = 0; i < m_; ++i) {
        r += (std::uint64_t)base_.add((gf_t)(ta % q), (gf_t)(tb % q)) * mul;
        ta /= q;
        tb /= q;
        mul *= q;
    }
    return static_cast<gf_t>(r);
}

gf_t FieldTower::neg(gf_t a) const {
    if (characteristic() == 2) return a;
    gf_t q = base_.q();
    std::uint64_t r = 0, mul = 1, ta = a;
    for (unsigned i = 0; i < m_; ++i) {
        r += (std::uint64_t)base_.neg((gf_t)(ta % q)) * mul;
        ta /= q;
        mul *= q;
    }
    return static_cast<gf_t>(r);
}

gf_t FieldTower::sub(gf_t a, gf_t b) const { return add(a, neg(b)); }

void FieldTower::build_log_tables() const {
    if (order_ > (1ULL << 16)) return;
    // find the smallest primitive element first
    std::uint64_t group = order_ - 1;
    auto factors = prime_factors(group);
    auto mul_raw = [this](gf_t a, gf_t b) {
        // direct polynomial multiplication, independent of the tables
        gf_t q = base_.q();
        Vec da = coeffs(a), db = coeffs(b), prod(2 * m_ - 1, 0);
        for (unsigned i = 0; i < m_; ++i) {
            if (da[i] == 0) continue;
            for (unsigned j = 0; j < m_; ++j)
                prod[i + j] = base_.add(prod[i + j], base_.mul(da[i], db[j]));
        }
        for (unsigned i = 2 * m_ - 2; i >= m_ && m_ > 1; --i) {
            gf_t c = prod[i];
            if (c != 0) {
                prod[i] = 0;
                for (unsigned j = 0; j < m_; ++j)
                    prod[i - m_ + j] = base_.sub(prod[i - m_ + j], base_.mul(c, mod_[j]));
            }
            if (i == m_) break;
        }
        std::uint64_t r = 0, mul = 1;
        for (unsigned i = 0; i < m_; ++i) {
            r += (std::uint64_t)prod[i] * mul;
            mul *= q;
        }
        return static_cast<gf_t>(r);
    };
    auto pow_raw = [&](gf_t a, std::uint64_t n) {
        gf_t r = 1, b = a;
        while (n) {
            if (n & 1) r = mul_raw(r, b);
            b = mul_raw(b, b);
            n >>= 1;
        }
        return r;
    };
    gf_t g = 0;
    for (gf_t cand = 1; cand < order_; ++cand) {
        bool primitive = true;
        for (auto f : factors) {
            if (pow_raw(cand, group / f) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            g = cand;
            break;
        }
    }
    generator_ = g;
    exp_.assign(group, 0);
    log_.assign(order_, 0);
    gf_t cur = 1;
    for (std::uint64_t i = 0; i < group; ++i) {
        exp_[i] = cur;
        log_[cur] = static_cast<std::uint32_t>(i);
        cur = mul_raw(cur, g);
    }
}

gf_t FieldTower::mul(gf_t a, gf_t b) const {
    if (a == 0 || b == 0) return 0;
    if (m_ == 1) return base_.mul(a, b);
    std::call_once(lut_once_, [this] { build_log_tables(); });
    if (!exp_.empty()) {
        std::uint64_t s = (std::uint64_t)log_[a] + log_[b];
        std::uint64_t group = order_ - 1;
        if (s >= group) s -= group;
        return exp_[s];
    }
    // direct polynomial path for large towers
    Vec da = coeffs(a), db = coeffs(b), prod(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < m_; ++j)
            prod[i + j] = base_.add(prod[i + j], base_.mul(da[i], db[j]));
    }
    for (unsigned i = 2 * m_ - 2; i >= m_; --i) {
        gf_t c = prod[i];
        if (c != 0) {
            prod[i] = 0;
            for (unsigned j = 0; j < m_; ++j)
                prod[i - m_ + j] = base_.sub(prod[i - m_ + j], base_.mul(c, mod_[j]));
        }
        if (i == m_) break;
    }
    std::uint64_t r = 0, mul = 1;
    for (unsigned i = 0; i < m_; ++i) {
        r += (std::uint64_t)prod[i] * mul;
        mul *= base_.q();
    }
    return static_cast<gf_t>(r);
}

gf_t FieldTower::pow(gf_t a, std::uint64_t n) const {
    gf_t r = 1, b = a;
    while (n) {
        if (n & 1) r = mul(r, b);
        b = mul(b, b);
        n >>= 1;
    }
    return r;
}

gf_t FieldTower::inv(gf_t a) const {
    if (a == 0) throw Error("division by zero in GF(q^m)");
    if (m_ == 1) return base_.inv(a);
    std::call_once(lut_once_, [this] { build_log_tables(); });
    if (!exp_.empty()) {
        std::uint64_t group = order_ - 1;
        std::uint64_t l = log_[a];
        return exp_[l == 0 ? 0 : group - l];
    }
    return pow(a, order_ - 2);
}

gf_t FieldTower::generator() const {
    std::call_once(lut_once_, [this] { build_log_tables(); });
    if (generator_) return *generator_;
    // large tower: search without tables
    std::uint64_t group = order_ - 1;
    auto factors = prime_factors(group);
    for (gf_t cand = 1; cand < order_; ++cand) {
        bool primitive = true;
        for (auto f : factors) {
            if (pow(cand, group / f) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return cand;
    }
    throw Error("no generator found (unreachable)");
}

std::uint64_t FieldTower::element_order(gf_t a) const {
    if (a == 0) throw Error("zero has no multiplicative order");
    std::uint64_t group = order_ - 1;
    std::uint64_t ord = group;
    for (auto f : prime_factors(group)) {
        while (ord % f == 0 && pow(a, ord / f) == 1) ord /= f;
    }
    return ord;
}

// ----------------------------------------------------- basis representations

namespace {

// Solve x * M = rhs over the base field, where M is m x m given as rows.
// Returns nullopt when M is singular.
std::optional<Vec> solve_base(const SmallField& bf, std::vector<Vec> rows, Vec rhs) {
    const std::size_t m = rows.size();
    // augment: work on transposed system M^T x^T = rhs^T
    std::vector<Vec> a(m, Vec(m + 1, 0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) a[i][j] = rows[j][i];
        a[i][m] = rhs[i];
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivot_col(m, 0);
    for (std::size_t col = 0; col < m && row < m; ++col) {
        std::size_t sel = row;
        while (sel < m && a[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(a[sel], a[row]);
        gf_t piv_inv = bf.inv(a[row][col]);
        for (std::size_t j = col; j <= m; ++j) a[row][j] = bf.mul(a[row][j], piv_inv);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || a[i][col] == 0) continue;
            gf_t factor = a[i][col];
            for (std::size_t j = col; j <= m; ++j)
                a[i][j] = bf.sub(a[i][j], bf.mul(factor, a[row][j]));
        }
        pivot_col[row] = col;
        ++row;
    }
    if (row < m) return std::nullopt;  // singular
    Vec x(m, 0);
    for (std::size_t i = 0; i < m; ++i) x[pivot_col[i]] = a[i][m];
    return x;
}

std::vector<Vec> basis_rows(const FieldTower& f, const Vec& basis) {
    if (basis.size() != f.m())
        throw BasisRankDeficient("basis must have m elements");
    std::vector<Vec> rows;
    rows.reserve(basis.size());
    for (gf_t b : basis) rows.push_back(f.coeffs(b));
    return rows;
}

}  // namespace

Vec ext_b(const FieldTower& f, gf_t a, const Vec& basis) {
    auto rows = basis_rows(f, basis);
    auto x = solve_base(f.base(), rows, f.coeffs(a));
    if (!x) throw BasisRankDeficient("basis does not span GF(q^m)");
    return *x;
}

gf_t ext_b_inv(const FieldTower& f, const Vec& coords, const Vec& basis) {
    if (coords.size() != f.m() || basis.size() != f.m())
        throw BasisRankDeficient("coordinate/basis length mismatch");
    gf_t acc = 0;
    for (unsigned i = 0; i < f.m(); ++i) {
        // coords[i] is a base field scalar; embed it as a constant and scale
        acc = f.add(acc, f.mul(coords[i], basis[i]));
    }
    return acc;
}

std::vector<Vec> matrix_rep(const FieldTower& f, gf_t a, const Vec& basis) {
    auto rows = basis_rows(f, basis);
    // validate rank once via a solve of an arbitrary rhs; cheaper to just
    // attempt the per-row coordinate solves, which fail on a deficient basis
    std::vector<Vec> m;
    m.reserve(basis.size());
    for (gf_t b : basis) {
        auto x = solve_base(f.base(), rows, f.coeffs(f.mul(b, a)));
        if (!x) throw BasisRankDeficient("basis does not span GF(q^m)");
        m.push_back(std::move(*x));
    }
    return m;
}

std::vector<Vec> matrix_rep(const FieldTower& f, gf_t a) {
    return matrix_rep(f, a, f.polynomial_basis());
}

}  // namespace gcmce
