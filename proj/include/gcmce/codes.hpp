#ifndef GCMCE_CODES_HPP
#define GCMCE_CODES_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcmce/linalg.hpp"

namespace gcmce {

// Enumeration guard for exhaustive codeword sweeps.
inline constexpr std::uint64_t kEnumerationCap = 1ULL << 22;

enum class DecodeStatus { correct, wrong, failure };

struct BmdResult {
    std::optional<Vec> codeword;
    bool failed() const { return !codeword.has_value(); }
};

// Per-block decoding outcome; correct/wrong are only meaningful when a
// ground-truth transmission is known.
struct DecodeOutcome {
    DecodeStatus status = DecodeStatus::failure;
    std::optional<Vec> codeword;
};

DecodeOutcome classify(const BmdResult& result, const Vec& transmitted);

// Linear [n, k] code over a FieldTower given by a full-rank generator
// matrix. Codes are immutable; the distance/weight caches fill lazily under
// a lock and are shared between copies.
class LinearCode {
   public:
    explicit LinearCode(FMatrix generator, std::string family = "generic",
                        std::optional<std::size_t> known_min_distance = std::nullopt);

    std::size_t n() const { return gen_.cols(); }
    std::size_t k() const { return gen_.rows(); }
    const FieldPtr& field() const { return gen_.field(); }
    const FMatrix& generator() const { return gen_; }
    const std::string& family() const { return family_; }

    // Number of codewords q^k; throws EnumerationTooLarge past the cap.
    std::uint64_t size() const;
    bool enumerable() const;

    Vec encode(const Vec& message) const;
    // Unique message with encode(message) == codeword.
    Vec message_of(const Vec& codeword) const;

    // Visits every codeword; fn returns false to stop early. The second
    // argument is the message index (flattened canonical integer).
    void enumerate_while(const std::function<bool(const Vec&, std::uint64_t)>& fn) const;

    LinearCode dual() const;
    std::size_t min_distance() const;
    // Dual distance; the trivial dual {0} (k == n) reports the sentinel
    // n + 1, which acts as +infinity in min(...) comparisons.
    std::size_t dual_distance() const;
    std::map<std::size_t, std::uint64_t> weight_distribution() const;

    // Weight distribution of the code punctured at position i (multiset over
    // all q^k codewords).
    std::map<std::size_t, std::uint64_t> signature(std::size_t i) const;

    // Bounded-minimum-distance decoding: the unique codeword within
    // `radius` of r, or failure. radius must be at most (d-1)/2.
    BmdResult bmd_decode(const Vec& r, std::size_t radius) const;

    // All nonzero codewords of weight < weight_bound whose support strictly
    // contains no other nonzero codeword's support.
    std::vector<Vec> minimal_support_codewords(std::size_t weight_bound) const;

    void set_algebraic_decoder(std::function<std::optional<Vec>(const Vec&)> dec);
    bool has_algebraic_decoder() const { return static_cast<bool>(algebraic_); }

    bool same_codeword_set(const LinearCode& other) const;

   private:
    struct Cache {
        std::mutex mu;
        std::optional<std::size_t> dmin;
        std::optional<std::size_t> dual_dmin;
        std::optional<std::map<std::size_t, std::uint64_t>> wdist;
    };

    FMatrix gen_;
    std::string family_;
    std::function<std::optional<Vec>(const Vec&)> algebraic_;
    std::shared_ptr<Cache> cache_;
};

inline std::pair<std::size_t, std::size_t> distances(const LinearCode& c) {
    return {c.min_distance(), c.dual_distance()};
}

// Union-find over positions: two positions share a component iff a chain of
// pairwise support-intersecting words links them. Components are returned
// sorted, covering exactly the supported positions.
std::vector<std::vector<std::size_t>> connected_components(const std::vector<Vec>& words,
                                                           std::size_t n);

// Reed-Solomon evaluation code with d = n - k + 1 and an attached algebraic
// decoder correcting floor((n-k)/2) errors. Evaluation points are the first
// n powers of the canonical generator, or all field elements when n = q^m.
LinearCode rs_code(std::size_t n, std::size_t k, FieldPtr field);

// Rejection-samples full-rank generators until the exhaustive minimum
// distance is at least d_min.
LinearCode random_code_with_distance(FieldPtr field, std::size_t n, std::size_t k,
                                     std::size_t d_min, std::uint64_t seed,
                                     std::uint64_t max_tries = 100000);

// True iff every choice of r columns sees every r-tuple over the symbol
// field exactly q^(k-r) times.
bool lemma2_check(const LinearCode& c, std::size_t r);

}  // namespace gcmce

#endif
