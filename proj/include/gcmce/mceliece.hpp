#ifndef GCMCE_MCELIECE_HPP
#define GCMCE_MCELIECE_HPP

#include <cstdint>

#include "gcmce/concat.hpp"

namespace gcmce {

struct PublicKey {
    FMatrix g_pub;  // S * G * P
    std::size_t t = 0;
};

struct PrivateKey {
    FMatrix s;
    FMatrix s_inv;
    PermMatrix p;
    GcSpec spec;
};

struct McElieceKeyPair {
    PublicKey pub;
    PrivateKey priv;
};

// Deterministic key generation over a GC code. The error budget must stay
// within the multistage decoder's guarantee. With debug_identity both S and
// P are identities, so g_pub equals the plain generator.
McElieceKeyPair keygen(GcSpec spec, std::size_t t, std::uint64_t seed,
                       bool debug_identity = false);

// Error vector of weight exactly t, or uniform over weight <= t when
// exact_weight is false.
Vec sample_error(const FieldTower& f, std::size_t n, std::size_t t, Rng& rng,
                 bool exact_weight = true);

Vec encrypt(const PublicKey& pub, const Vec& message, std::uint64_t seed,
            bool exact_weight = true);

// r * P^-1, multistage decoding, then S^-1. Throws DecodeFailure when the
// decoder fails (impossible for wt(e) <= t).
Vec decrypt(const PrivateKey& priv, const Vec& r);

}  // namespace gcmce

#endif
