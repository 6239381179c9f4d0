#include "gcmce/workfactor.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "gcmce/codes.hpp"
#include "gcmce/errors.hpp"
#include "gcmce/mceliece.hpp"

namespace gcmce {

namespace {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (std::size_t i = 0; i < k; ++i) {
        r *= static_cast<unsigned long long>(n - i);
        r /= static_cast<unsigned long long>(i + 1);
    }
    return r;
}

double log2_big(const BigInt& x) {
    if (x <= 0) throw InfeasibleParameters("log2 of non-positive value");
    const unsigned bits = boost::multiprecision::msb(x);
    if (bits <= 52) return std::log2(x.convert_to<double>());
    BigInt mant = x >> (bits - 52);
    return std::log2(mant.convert_to<double>()) + static_cast<double>(bits - 52);
}

double ratio_to_double(const BigInt& num, const BigInt& den) {
    double l = log2_big(num) - log2_big(den);
    if (l > 1020) return std::numeric_limits<double>::infinity();
    return std::exp2(l);
}

struct Tally {
    std::uint64_t correct = 0, wrong = 0, failed = 0;
    Tally& operator+=(const Tally& o) {
        correct += o.correct;
        wrong += o.wrong;
        failed += o.failed;
        return *this;
    }
};

// Packed fast path for binary codes of length <= 64.
Tally run_code_packed(const LinearCode& code, const ErrorModel& model,
                      std::uint64_t trials, std::uint64_t seed, std::size_t code_index) {
    const std::size_t n = code.n();
    std::vector<std::uint64_t> table(code.size());
    code.enumerate_while([&](const Vec& cw, std::uint64_t idx) {
        std::uint64_t packed = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (cw[i]) packed |= 1ULL << i;
        table[idx] = packed;
        return true;
    });
    const std::size_t radius = (code.min_distance() - 1) / 2;

    Tally tally;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::derive(Rng::mix(seed, 0x7261ULL), code_index, trial);
        std::uint64_t cw = table[rng.below(table.size())];
        std::uint64_t emask = 0;
        if (model.kind == ErrorModelKind::bernoulli) {
            for (std::size_t i = 0; i < n; ++i)
                if (rng.bernoulli(model.num, model.den)) emask |= 1ULL << i;
        } else {
            for (auto pos : rng.sample_distinct(static_cast<std::uint32_t>(n),
                                                static_cast<std::uint32_t>(model.weight)))
                emask |= 1ULL << pos;
        }
        std::uint64_t received = cw ^ emask;
        std::uint64_t found = 0;
        bool hit = false;
        for (std::uint64_t cand : table) {
            if (static_cast<std::size_t>(__builtin_popcountll(cand ^ received)) <= radius) {
                found = cand;
                hit = true;
                break;  // unique within the BMD radius
            }
        }
        if (!hit)
            ++tally.failed;
        else if (found == cw)
            ++tally.correct;
        else
            ++tally.wrong;
    }
    return tally;
}

Tally run_code_generic(const LinearCode& code, const ErrorModel& model,
                       std::uint64_t trials, std::uint64_t seed, std::size_t code_index) {
    const FieldTower& f = *code.field();
    const std::size_t n = code.n();
    std::vector<Vec> table(code.size());
    code.enumerate_while([&](const Vec& cw, std::uint64_t idx) {
        table[idx] = cw;
        return true;
    });
    const std::size_t radius = (code.min_distance() - 1) / 2;

    Tally tally;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::derive(Rng::mix(seed, 0x7261ULL), code_index, trial);
        const Vec& cw = table[rng.below(table.size())];
        Vec received = cw;
        if (model.kind == ErrorModelKind::bernoulli) {
            for (std::size_t i = 0; i < n; ++i)
                if (rng.bernoulli(model.num, model.den))
                    received[i] = f.add(received[i],
                                        static_cast<gf_t>(1 + rng.below(f.order() - 1)));
        } else {
            for (auto pos : rng.sample_distinct(static_cast<std::uint32_t>(n),
                                                static_cast<std::uint32_t>(model.weight)))
                received[pos] = f.add(received[pos],
                                      static_cast<gf_t>(1 + rng.below(f.order() - 1)));
        }
        const Vec* found = nullptr;
        for (const Vec& cand : table) {
            if (hamming_distance(cand, received) <= radius) {
                found = &cand;
                break;
            }
        }
        if (!found)
            ++tally.failed;
        else if (*found == cw)
            ++tally.correct;
        else
            ++tally.wrong;
    }
    return tally;
}

}  // namespace

IsdWf isd_workfactor(std::size_t n, std::size_t /*k*/, std::size_t t, std::size_t delta) {
    if (delta > n - t)
        throw InfeasibleParameters("delta exceeds n - t; no error-free draw exists");
    BigInt num = binomial(n, delta) * BigInt(delta) * delta * delta;
    BigInt den = binomial(n - t, delta);
    IsdWf r;
    r.w = ratio_to_double(num, den);
    r.log2w = log2_big(num) - log2_big(den);
    return r;
}

WorkFactorReport nonstructural_workfactor(std::size_t n_a, std::size_t n_b, std::size_t k_b,
                                          std::size_t t_b, std::size_t k_gc, std::size_t n_c,
                                          std::size_t n_w, std::size_t tau) {
    if (tau > n_c) throw InfeasibleParameters("tau exceeds the number of correct blocks");
    if (n_b < t_b + k_b)
        throw InfeasibleParameters("n_B - t_B below k_B; the per-block attack cannot draw");

    WorkFactorReport r;
    r.n_a = n_a;
    r.n_b = n_b;
    r.k_b = k_b;
    r.t_b = t_b;
    r.k_gc = k_gc;
    r.n_c = n_c;
    r.n_w = n_w;
    r.tau = tau;

    BigInt kb3 = BigInt(k_b) * k_b * k_b;
    BigInt w1_num = BigInt(n_a) * kb3 * binomial(n_b, k_b);
    BigInt w1_den = binomial(n_b - t_b, k_b);
    r.w1 = ratio_to_double(w1_num, w1_den);

    BigInt p_num = binomial(n_c, tau);
    BigInt p_den = binomial(n_c + n_w, tau);
    r.p = ratio_to_double(p_num, p_den);

    BigInt kgc3 = BigInt(k_gc) * k_gc * k_gc;
    BigInt w2_num = kgc3 * p_den;
    r.w2 = ratio_to_double(w2_num, p_num);

    r.w = r.w1 + r.w2;
    if (std::isinf(r.w)) {
        // fall back to exact log of the dominant term
        double l1 = log2_big(w1_num) - log2_big(w1_den);
        double l2 = log2_big(w2_num) - log2_big(p_num);
        r.log2w = std::max(l1, l2);
    } else {
        r.log2w = std::log2(r.w);
    }
    return r;
}

DecodeStats montecarlo_decode_stats(gf_t q, std::size_t n_b, std::size_t k_b, std::size_t d_b,
                                    const ErrorModel& model, std::uint64_t trials_per_code,
                                    std::size_t codes, std::uint64_t seed, unsigned workers) {
    if (codes == 0 || trials_per_code == 0)
        throw InfeasibleParameters("need at least one code and one trial");
    FieldPtr field = make_tower(q, 1);
    if (workers == 0) workers = 1;

    std::vector<Tally> partial(workers);
    auto work = [&](unsigned wid) {
        Tally local;
        for (std::size_t c = wid; c < codes; c += workers) {
            LinearCode code = random_code_with_distance(field, n_b, k_b, d_b,
                                                        Rng::mix(Rng::mix(seed, 0xC0DEULL), c));
            if (q == 2 && n_b <= 64)
                local += run_code_packed(code, model, trials_per_code, seed, c);
            else
                local += run_code_generic(code, model, trials_per_code, seed, c);
        }
        partial[wid] = local;
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned wdx = 0; wdx < workers; ++wdx) threads.emplace_back(work, wdx);
        for (auto& th : threads) th.join();
    }
    Tally total;
    for (const auto& t : partial) total += t;

    DecodeStats s;
    s.trials = trials_per_code * codes;
    s.codes = codes;
    const double nt = static_cast<double>(s.trials);
    s.p_c = total.correct / nt;
    s.p_w = total.wrong / nt;
    s.p_f = total.failed / nt;
    s.se_c = std::sqrt(s.p_c * (1 - s.p_c) / nt);
    s.se_w = std::sqrt(s.p_w * (1 - s.p_w) / nt);
    s.se_f = std::sqrt(s.p_f * (1 - s.p_f) / nt);
    return s;
}

AppendixBReport appendix_b_report(std::uint64_t seed, std::uint64_t trials_per_code,
                                  std::size_t codes, unsigned workers) {
    AppendixBReport rep;
    rep.closed_form = nonstructural_workfactor(128, 16, 7, 2, 308, 99, 6, 44);
    if (trials_per_code > 0 && codes > 0) {
        rep.stats = montecarlo_decode_stats(2, 16, 7, 5, ErrorModel::bernoulli(212, 2048),
                                            trials_per_code, codes, seed, workers);
        auto nc = static_cast<std::size_t>(std::lround(128 * rep.stats->p_c));
        auto nw = static_cast<std::size_t>(std::lround(128 * rep.stats->p_w));
        rep.measured = nonstructural_workfactor(128, 16, 7, 2, 308, nc, nw, 44);
    }
    return rep;
}

std::uint64_t suggested_max_iters(double p) {
    if (p <= 0 || p > 1) throw InfeasibleParameters("success probability outside (0, 1]");
    return static_cast<std::uint64_t>(std::ceil(50.0 / p));
}

}  // namespace gcmce
