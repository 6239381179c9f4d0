#ifndef GCMCE_CONCAT_HPP
#define GCMCE_CONCAT_HPP

#include <memory>
#include <optional>
#include <vector>

#include "gcmce/codes.hpp"

namespace gcmce {

// Nested chain of inner subcodes B = B^(0) > B^(1) > ... > B^(l-1) > {0}
// over GF(q). The chain is passed as generator matrices down to the last
// nonzero subcode; the zero code is implied. The labeling map theta is
// derived deterministically from the chain: the rows for level i are a
// coset-representative basis completing B^(i) to B^(i-1).
class PartitionTree {
   public:
    explicit PartitionTree(std::vector<FMatrix> chain);
    // Adopts an explicit theta matrix: the k^(i) rows of level i are taken
    // verbatim as that level's coset representative basis, and the chain is
    // rebuilt from the row suffixes. Keeps file round-trips bit-exact.
    PartitionTree(const FMatrix& theta, const std::vector<std::size_t>& level_dims);

    std::size_t levels() const { return chain_.size(); }
    std::size_t n_b() const { return chain_[0].cols(); }
    std::size_t k_b() const { return chain_[0].rows(); }

    // Generator of B^(j); j == levels() denotes the zero code (0 rows).
    const FMatrix& subcode(std::size_t j) const;
    std::size_t subcode_dim(std::size_t j) const;
    // k^(i) and d(B^(i-1)) for level i in [1, levels()].
    std::size_t level_dim(std::size_t i) const;
    std::size_t level_distance(std::size_t i) const;

    const FMatrix& theta() const { return theta_; }
    // The k^(i) theta rows belonging to level i, as a k^(i) x n_B matrix.
    FMatrix theta_rows(std::size_t i) const;
    std::size_t level_offset(std::size_t i) const { return offsets_[i - 1]; }

   private:
    std::vector<FMatrix> chain_;
    FMatrix zero_;  // 0 x n_B
    FMatrix theta_;
    std::vector<std::size_t> offsets_;
    mutable std::shared_ptr<std::vector<std::optional<std::size_t>>> dist_cache_;
    mutable std::shared_ptr<std::mutex> dist_mu_;
};

// Message of a GC code: one vector of outer-field symbols per level,
// component i of length k_A^(i) over GF(q^{k^(i)}).
using GcMessage = std::vector<Vec>;

// A generalized concatenated code: inner code B over GF(q), partition tree,
// and l outer codes A^(i) over GF(q^{k^(i)}). The per-block variant carries
// one tree (hence one inner code and one theta) per inner block.
class GcSpec {
   public:
    GcSpec(LinearCode inner, PartitionTree tree, std::vector<LinearCode> outers);

    gf_t q() const { return inner(0).field()->q(); }
    std::size_t ell() const { return outers_.size(); }
    std::size_t n_a() const { return outers_[0].n(); }
    std::size_t n_b() const { return trees_[0].n_b(); }
    std::size_t k_b() const { return trees_[0].k_b(); }
    std::size_t n_gc() const { return n_a() * n_b(); }
    std::size_t k_gc() const { return k_gc_; }
    std::size_t level_dim(std::size_t i) const { return trees_[0].level_dim(i + 1); }

    const LinearCode& outer(std::size_t i) const { return outers_[i]; }
    bool per_block() const { return trees_.size() > 1; }
    const LinearCode& inner(std::size_t block) const {
        return inners_[per_block() ? block : 0];
    }
    const PartitionTree& tree(std::size_t block) const {
        return trees_[per_block() ? block : 0];
    }
    const FMatrix& theta(std::size_t block) const { return tree(block).theta(); }

    const FMatrix& generator() const;

    Vec flatten(const GcMessage& msg) const;
    GcMessage unflatten(const Vec& flat) const;

    Vec encode(const GcMessage& msg) const;
    Vec encode_flat(const Vec& flat) const { return encode(unflatten(flat)); }

    // Multistage decoding: per level, exhaustive minimum generalized-weight
    // outer decision over per-block coset distances. Corrects every pattern
    // of weight < min_distance_bound()/2; returns nullopt on a tie.
    std::optional<GcMessage> decode_multistage(const Vec& received) const;

    std::size_t min_distance_bound() const;

    // True when the per-block inner codes have pairwise different position
    // signatures everywhere (relevant to the per-block variant only).
    bool block_signatures_pairwise_distinct() const;

   private:
    GcSpec() = default;
    friend GcSpec build_justesen_variant(const GcSpec& base, std::vector<PartitionTree> trees);

    void validate_and_finish();

    std::vector<LinearCode> inners_;
    std::vector<PartitionTree> trees_;
    std::vector<LinearCode> outers_;
    std::size_t k_gc_ = 0;
    mutable std::shared_ptr<std::optional<FMatrix>> gen_cache_;
    mutable std::shared_ptr<std::mutex> gen_mu_;
};

inline GcSpec build_gcc(LinearCode inner, PartitionTree tree, std::vector<LinearCode> outers) {
    return GcSpec(std::move(inner), std::move(tree), std::move(outers));
}

// Per-block variant: block i encodes through the tree (and so the inner
// code and theta map) per_block_trees[i]. Level dimensions must match the
// base spec so the outer codes stay valid.
GcSpec build_justesen_variant(const GcSpec& base, std::vector<PartitionTree> per_block_trees);

// Classifier from the equal-k^(i) equivalence theorem: the GC code is an
// ordinary concatenation iff all outer codes coincide. Throws NotApplicable
// when the level dimensions differ.
bool occ_equivalence_check(const GcSpec& spec);

struct XiCheck {
    bool xi_empty_guaranteed;  // structural recovery step 1 not guaranteed
    std::size_t threshold;     // min(d_A^(i)-dual ..., 2 d_B-dual)
};

XiCheck xi_emptiness_check(const GcSpec& spec);

inline FMatrix gcc_generator(const GcSpec& spec) { return spec.generator(); }
inline Vec gcc_encode(const GcSpec& spec, const GcMessage& msg) { return spec.encode(msg); }
inline std::optional<GcMessage> gcc_decode_multistage(const GcSpec& spec, const Vec& received) {
    return spec.decode_multistage(received);
}
inline std::size_t min_distance_bound(const GcSpec& spec) { return spec.min_distance_bound(); }

}  // namespace gcmce

#endif
