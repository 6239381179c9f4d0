#include "gcmce/mceliece.hpp"

#include <string>

#include "gcmce/errors.hpp"

namespace gcmce {

McElieceKeyPair keygen(GcSpec spec, std::size_t t, std::uint64_t seed, bool debug_identity) {
    const std::size_t budget = (spec.min_distance_bound() - 1) / 2;
    if (t > budget)
        throw ErrorBudgetTooLarge("t = " + std::to_string(t) + " exceeds the decoder budget " +
                                  std::to_string(budget));
    const FMatrix& g = spec.generator();
    const std::size_t k = spec.k_gc();
    const std::size_t n = spec.n_gc();

    FMatrix s = debug_identity ? FMatrix::identity(g.field(), k)
                               : random_invertible(g.field(), k, Rng::mix(seed, 0));
    PermMatrix p = debug_identity ? PermMatrix::identity(n)
                                  : PermMatrix::random(n, Rng::mix(seed, 1));
    FMatrix s_inv = *s.inverse();
    FMatrix g_pub = p.apply_to_cols(s * g);

    McElieceKeyPair kp{PublicKey{std::move(g_pub), t},
                       PrivateKey{std::move(s), std::move(s_inv), std::move(p), std::move(spec)}};
    return kp;
}

Vec sample_error(const FieldTower& f, std::size_t n, std::size_t t, Rng& rng, bool exact_weight) {
    std::size_t w = t;
    if (!exact_weight && t > 0) {
        // uniform over all vectors of weight <= t: pick the weight with
        // probability proportional to C(n,w) * (q^m - 1)^w
        const std::uint64_t nonzero = f.order() - 1;
        unsigned __int128 total = 0;
        std::vector<unsigned __int128> cum(t + 1);
        unsigned __int128 binom = 1;
        unsigned __int128 pw = 1;
        for (std::size_t i = 0; i <= t; ++i) {
            unsigned __int128 term = binom * pw;
            total += term;
            cum[i] = total;
            binom = binom * (n - i) / (i + 1);
            pw *= nonzero;
            if (total > (unsigned __int128)1 << 62)
                throw ParametersInfeasible("error weight distribution too large to sample exactly");
        }
        std::uint64_t draw = rng.below(static_cast<std::uint64_t>(total));
        w = 0;
        while (cum[w] <= draw) ++w;
    }
    Vec e(n, 0);
    auto positions = rng.sample_distinct(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(w));
    for (auto pos : positions)
        e[pos] = static_cast<gf_t>(1 + rng.below(f.order() - 1));
    return e;
}

Vec encrypt(const PublicKey& pub, const Vec& message, std::uint64_t seed, bool exact_weight) {
    if (message.size() != pub.g_pub.rows())
        throw DimensionMismatch("message length must equal the code dimension");
    Rng rng(seed);
    Vec r = pub.g_pub.mul_row_vec(message);
    Vec e = sample_error(*pub.g_pub.field(), pub.g_pub.cols(), pub.t, rng, exact_weight);
    return vec_add(*pub.g_pub.field(), r, e);
}

Vec decrypt(const PrivateKey& priv, const Vec& r) {
    if (r.size() != priv.p.size()) throw DimensionMismatch("cryptogram length mismatch");
    Vec unpermuted = priv.p.inverse().apply(r);
    auto msg = priv.spec.decode_multistage(unpermuted);
    if (!msg) throw DecodeFailure("multistage decoder failed on the cryptogram");
    Vec m_hat = priv.spec.flatten(*msg);  // = m * S
    return priv.s_inv.mul_row_vec(m_hat);
}

}  // namespace gcmce
