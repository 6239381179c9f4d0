#ifndef GCMCE_WORKFACTOR_HPP
#define GCMCE_WORKFACTOR_HPP

#include <cstdint>
#include <optional>

#include "gcmce/gf.hpp"

namespace gcmce {

struct IsdWf {
    double w = 0;
    double log2w = 0;
};

// delta^3 * C(n, delta) / C(n - t, delta), evaluated with exact integer
// binomials; only the final cast is floating point.
IsdWf isd_workfactor(std::size_t n, std::size_t k, std::size_t t, std::size_t delta);

struct WorkFactorReport {
    double w1 = 0, w2 = 0, w = 0, log2w = 0;
    double p = 0;  // part-2 success probability C(n_c,tau)/C(n_c+n_w,tau)
    std::size_t n_a = 0, n_b = 0, k_b = 0, t_b = 0, k_gc = 0, n_c = 0, n_w = 0, tau = 0;
};

// W1 = n_A * k_B^3 * C(n_B, k_B) / C(n_B - t_B, k_B)
// W2 = k_GC^3 * C(n_c + n_w, tau) / C(n_c, tau),  W = W1 + W2
WorkFactorReport nonstructural_workfactor(std::size_t n_a, std::size_t n_b, std::size_t k_b,
                                          std::size_t t_b, std::size_t k_gc, std::size_t n_c,
                                          std::size_t n_w, std::size_t tau);

enum class ErrorModelKind { bernoulli, fixed_weight };

struct ErrorModel {
    ErrorModelKind kind = ErrorModelKind::bernoulli;
    std::uint64_t num = 0, den = 1;  // per-symbol error probability num/den
    std::size_t weight = 0;

    static ErrorModel bernoulli(std::uint64_t num, std::uint64_t den) {
        ErrorModel m;
        m.kind = ErrorModelKind::bernoulli;
        m.num = num;
        m.den = den;
        return m;
    }
    static ErrorModel fixed_weight(std::size_t w) {
        ErrorModel m;
        m.kind = ErrorModelKind::fixed_weight;
        m.weight = w;
        return m;
    }
};

struct DecodeStats {
    double p_c = 0, p_w = 0, p_f = 0;
    double se_c = 0, se_w = 0, se_f = 0;
    std::uint64_t trials = 0;
    std::size_t codes = 0;
};

// Samples `codes` random [n_b, k_b, >= d_b] codes, decodes `trials_per_code`
// noisy codewords per code with the half-minimum-distance BMD decoder and
// classifies against the known transmission. Per-trial derived seeds make
// the result independent of the worker count.
DecodeStats montecarlo_decode_stats(gf_t q, std::size_t n_b, std::size_t k_b, std::size_t d_b,
                                    const ErrorModel& model, std::uint64_t trials_per_code,
                                    std::size_t codes, std::uint64_t seed, unsigned workers = 1);

struct AppendixBReport {
    WorkFactorReport closed_form;  // canonical counts n_c=99, n_w=6, tau=44
    std::optional<DecodeStats> stats;
    std::optional<WorkFactorReport> measured;  // counts rounded from the simulation
};

// Closed-form work factor for the reference concatenated construction;
// optionally re-estimates the decoder statistics by simulation when
// trials_per_code and codes are nonzero.
AppendixBReport appendix_b_report(std::uint64_t seed, std::uint64_t trials_per_code = 0,
                                  std::size_t codes = 0, unsigned workers = 1);

// ceil(50 / p): iteration budget giving a vanishing miss probability for a
// geometric search with success probability p.
std::uint64_t suggested_max_iters(double p);

}  // namespace gcmce

#endif
