#ifndef GCMCE_ATTACKS_HPP
#define GCMCE_ATTACKS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gcmce/codes.hpp"

namespace gcmce {

// Disjoint equal-size index sets covering {0,...,n-1}; the recovered inner
// block structure.
struct BlockPartition {
    std::vector<std::vector<std::size_t>> blocks;

    std::size_t n_a() const { return blocks.size(); }
    std::size_t n_b() const { return blocks.empty() ? 0 : blocks[0].size(); }
    void validate(std::size_t n) const;
    // Result of solving the restricted system at acceptance time.
    std::vector<std::size_t> columns_of(const std::vector<std::size_t>& block_indices) const;
};

struct IsdResult {
    Vec message;
    std::uint64_t iterations = 0;
    std::size_t delta_used = 0;
};

// Plain information-set decoding: sample delta coordinates, solve the
// restricted system, accept on the distance guard. Deterministic given
// seed. delta grows by one after persistently underdetermined draws.
IsdResult isd_attack(const FMatrix& g_pub, const Vec& r, std::size_t t, std::size_t delta,
                     std::uint64_t max_iters, std::uint64_t seed);

// Step 1 of the structural attack: minimal-support dual codewords below the
// weight bound, grouped into connected components. Throws InsufficientWords
// unless the components form n_a classes of size n_b.
BlockPartition sendrier_step1(const FMatrix& g_pub, std::size_t n_a, std::size_t n_b,
                              std::size_t weight_bound);
// Blind variant: starts at 2*(n_b - k_b estimate) and raises the bound until
// the components stabilize into n_a equal classes.
BlockPartition sendrier_step1_auto(const FMatrix& g_pub, std::size_t n_a, std::size_t n_b);

struct Step2Result {
    // alignments[b][p] = position of block b's p-th column inside the
    // reference block 0 (signature matching).
    std::vector<std::vector<std::size_t>> alignments;
    // number of signature-consistent bijections (1 = unambiguous)
    std::uint64_t multiplicity = 1;
};

// Step 2: align every block with block 0 by matching position signatures.
// Throws AmbiguousSignatures when positions share a signature (unless
// allow_ambiguous picks the lexicographically smallest matching) and
// SignatureMismatch when no consistent alignment exists.
Step2Result sendrier_step2(const FMatrix& g_pub, const BlockPartition& partition,
                           bool allow_ambiguous = false);

// Column order that groups blocks and applies the step-2 alignment; feeding
// g_pub through it yields the matrix Step 3.1 expects.
std::vector<std::size_t> aligned_column_order(const BlockPartition& partition,
                                              const Step2Result& alignment);
FMatrix apply_alignment(const FMatrix& g_pub, const BlockPartition& partition,
                        const Step2Result& alignment);

// Step 3.1: reduced row echelon form of the aligned matrix; the top-left
// k_B x n_B block generates the permuted inner code.
LinearCode sendrier_step3_1(const FMatrix& g_aligned, std::size_t n_b);

// Alternative block recovery: restrict to each block's columns and extract
// a row basis by elimination. Works for per-block inner codes too.
std::vector<LinearCode> block_generators(const FMatrix& g_pub, const BlockPartition& partition);

struct AttackReport {
    std::optional<Vec> message;
    std::uint64_t iterations = 0;
    std::size_t tau_used = 0;
    std::size_t n_decoded = 0;  // blocks whose inner decoding produced a word
    std::size_t n_failed = 0;
    // filled only when a ground-truth codeword is supplied
    std::optional<std::size_t> n_correct, n_wrong;
    std::vector<DecodeOutcome> per_block;  // ditto
    std::size_t accept_distance = 0;       // d_H(m^ * G, r) at acceptance
    double elapsed_seconds = 0.0;
};

// Decode each inner block within its recovered code, then information-set
// decode over -blocks- that did not fail. The guard accepts m^ with
// d_H(m^ G, r) < d_gc/2 when d_gc is known, else d_H <= t.
AttackReport nonstructural_attack(const FMatrix& g_pub, const Vec& r, std::size_t t,
                                  const BlockPartition& partition,
                                  const std::vector<LinearCode>& block_codes, std::size_t tau,
                                  std::uint64_t max_iters, std::uint64_t seed,
                                  std::optional<std::size_t> d_gc = std::nullopt,
                                  const Vec* ground_truth_codeword = nullptr);

}  // namespace gcmce

#endif
