#ifndef GCMCE_GF_HPP
#define GCMCE_GF_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "gcmce/errors.hpp"

namespace gcmce {

// Canonical element value. An element of GF(q^m) with polynomial-basis
// coefficients a_0..a_{m-1} over GF(q) is encoded as the integer
// sum a_i * q^i, where each a_i is itself the canonical value of a base
// field element. This encoding is what all file formats carry.
using gf_t = std::uint32_t;
using Vec = std::vector<gf_t>;

// Largest supported field size; several operations enumerate all elements.
inline constexpr std::uint64_t kMaxFieldOrder = 1ULL << 24;

// GF(p^e) used as the base field GF(q) of a tower. For e > 1 the field is
// GF(p)[x]/(f) with f the canonically chosen irreducible modulus.
class SmallField {
   public:
    explicit SmallField(gf_t q);

    gf_t q() const { return q_; }
    gf_t p() const { return p_; }
    unsigned e() const { return e_; }
    // Modulus over GF(p), low-degree first, size e+1, monic. Empty for e == 1.
    const std::vector<gf_t>& modulus() const { return mod_; }

    gf_t add(gf_t a, gf_t b) const;
    gf_t sub(gf_t a, gf_t b) const;
    gf_t neg(gf_t a) const;
    gf_t mul(gf_t a, gf_t b) const;
    gf_t inv(gf_t a) const;
    gf_t pow(gf_t a, std::uint64_t n) const;

   private:
    gf_t mul_nolut(gf_t a, gf_t b) const;

    gf_t q_ = 0, p_ = 0;
    unsigned e_ = 0;
    std::vector<gf_t> mod_;
    std::vector<gf_t> mul_lut_;  // q*q table when q is small
};

class FieldTower;
using FieldPtr = std::shared_ptr<const FieldTower>;

// GF(q^m) over GF(q) with a fixed deterministic modulus, so canonical
// element values agree across runs and machines.
class FieldTower : public std::enable_shared_from_this<FieldTower> {
   public:
    // Canonical construction: lexicographically smallest monic irreducible
    // modulus of degree m over GF(q). Throws NotPrimePower / DegreeTooLarge.
    static FieldPtr make(gf_t q, unsigned m);
    // Explicit modulus (low-degree first, size m+1, monic, irreducible).
    static FieldPtr make(gf_t q, unsigned m, std::vector<gf_t> modulus);

    gf_t q() const { return base_.q(); }
    unsigned m() const { return m_; }
    std::uint64_t order() const { return order_; }
    gf_t characteristic() const { return base_.p(); }
    const SmallField& base() const { return base_; }
    const Vec& modulus() const { return mod_; }
    bool same_field(const FieldTower& other) const;

    gf_t add(gf_t a, gf_t b) const;
    gf_t sub(gf_t a, gf_t b) const;
    gf_t neg(gf_t a) const;
    gf_t mul(gf_t a, gf_t b) const;
    gf_t inv(gf_t a) const;
    gf_t div(gf_t a, gf_t b) const { return mul(a, inv(b)); }
    gf_t pow(gf_t a, std::uint64_t n) const;

    // Polynomial-basis coordinates of a, i.e. ext with the default basis.
    Vec coeffs(gf_t a) const;
    gf_t from_coeffs(const Vec& c) const;

    // Default basis 1, x, ..., x^{m-1} as canonical values.
    Vec polynomial_basis() const;

    // Smallest primitive element (generator of the multiplicative group).
    gf_t generator() const;
    std::uint64_t element_order(gf_t a) const;

   private:
    FieldTower(SmallField base, unsigned m, Vec mod);
    void build_log_tables() const;

    SmallField base_;
    unsigned m_;
    std::uint64_t order_;
    Vec mod_;  // size m_+1, monic, over GF(q)

    mutable std::once_flag lut_once_;
    mutable std::vector<gf_t> exp_;       // exp_[i] = g^i, 0 <= i < order-1
    mutable std::vector<std::uint32_t> log_;
    mutable std::optional<gf_t> generator_;
};

// Factory matching the operation contract: deterministic modulus, desk cap.
FieldPtr make_tower(gf_t q, unsigned m);

// Coordinates of a w.r.t. an arbitrary GF(q)-basis of the tower (m elements
// given as canonical values). Throws BasisRankDeficient.
Vec ext_b(const FieldTower& f, gf_t a, const Vec& basis);
gf_t ext_b_inv(const FieldTower& f, const Vec& coords, const Vec& basis);
inline Vec ext_b(const FieldTower& f, gf_t a) { return f.coeffs(a); }

// m x m matrix over GF(q) representing multiplication by a: row i holds the
// coordinates of basis[i]*a. Row 0 of the default construction equals
// ext_b(a), and the map a -> matrix_rep(a) is a field isomorphism onto its
// image in the matrix ring.
std::vector<Vec> matrix_rep(const FieldTower& f, gf_t a, const Vec& basis);
std::vector<Vec> matrix_rep(const FieldTower& f, gf_t a);

// Convenience element wrapper for call sites where carrying (field, value)
// pairs around is noisy.
struct FieldElement {
    FieldPtr field;
    gf_t v = 0;

    FieldElement() = default;
    FieldElement(FieldPtr f, gf_t value) : field(std::move(f)), v(value) {}

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        return {a.field, a.field->add(a.v, b.v)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        return {a.field, a.field->sub(a.v, b.v)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        return {a.field, a.field->mul(a.v, b.v)};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        return {a.field, a.field->div(a.v, b.v)};
    }
    friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.v == b.v; }
};

}  // namespace gcmce

#endif
