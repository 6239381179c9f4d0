#include "gcmce/codes.hpp"

#include <algorithm>
#include <string>

#include "gcmce/errors.hpp"
#include "gcmce/poly.hpp"

namespace gcmce {

namespace {

struct SupportMask {
    std::vector<std::uint64_t> w;

    static SupportMask of(const Vec& v) {
        SupportMask m;
        m.w.assign((v.size() + 63) / 64, 0);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) m.w[i / 64] |= 1ULL << (i % 64);
        return m;
    }
    bool subset_of(const SupportMask& o) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }
    bool operator==(const SupportMask& o) const { return w == o.w; }
};

}  // namespace

DecodeOutcome classify(const BmdResult& result, const Vec& transmitted) {
    if (result.failed()) return {DecodeStatus::failure, std::nullopt};
    if (*result.codeword == transmitted) return {DecodeStatus::correct, result.codeword};
    return {DecodeStatus::wrong, result.codeword};
}

LinearCode::LinearCode(FMatrix generator, std::string family,
                       std::optional<std::size_t> known_min_distance)
    : gen_(std::move(generator)), family_(std::move(family)), cache_(std::make_shared<Cache>()) {
    if (gen_.rows() == 0 || gen_.cols() == 0) throw DimensionMismatch("empty generator matrix");
    if (gen_.rank() != gen_.rows())
        throw DimensionMismatch("generator matrix must have full row rank");
    if (known_min_distance) cache_->dmin = known_min_distance;
}

std::uint64_t LinearCode::size() const {
    const std::uint64_t order = field()->order();
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < k(); ++i) {
        if (s > kEnumerationCap / order + 1)
            throw EnumerationTooLarge("codebook larger than the enumeration cap");
        s *= order;
        if (s > kEnumerationCap)
            throw EnumerationTooLarge("codebook larger than the enumeration cap");
    }
    return s;
}

bool LinearCode::enumerable() const {
    const std::uint64_t order = field()->order();
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < k(); ++i) {
        s *= order;
        if (s > kEnumerationCap) return false;
    }
    return true;
}

Vec LinearCode::encode(const Vec& message) const { return gen_.mul_row_vec(message); }

Vec LinearCode::message_of(const Vec& codeword) const {
    auto res = solve_right(gen_, codeword);
    if (res.status != SolveResult::Status::unique)
        throw Error("codeword does not determine a unique message");
    return res.solution;
}

// Exhaustive codeword enumeration. Messages are walked as a base-p counter
// over the prime-field coordinates of all k symbols; each digit touch adds
// one pre-scaled generator row (p identical additions cancel in
// characteristic p, so carries come for free). Amortized O(n) per codeword.
void LinearCode::enumerate_while(const std::function<bool(const Vec&, std::uint64_t)>& fn) const {
    const std::uint64_t total = size();  // throws past the cap
    const FieldTower& f = *field();
    const gf_t p = f.characteristic();

    // prime-field basis of the symbol field, as canonical values
    std::vector<gf_t> pbasis;
    {
        const gf_t q = f.q();
        const unsigned e = f.base().e();
        std::uint64_t qpow = 1;
        for (unsigned i = 0; i < f.m(); ++i) {
            std::uint64_t ppow = 1;
            for (unsigned j = 0; j < e; ++j) {
                pbasis.push_back(static_cast<gf_t>(qpow * ppow));
                ppow *= p;
            }
            qpow *= q;
        }
    }
    const std::size_t d = pbasis.size();
    const std::size_t digits = k() * d;

    std::vector<Vec> scaled_rows(digits);
    for (std::size_t j = 0; j < k(); ++j) {
        Vec base_row = gen_.row(j);
        for (std::size_t t = 0; t < d; ++t) {
            Vec r(n());
            for (std::size_t c = 0; c < n(); ++c) r[c] = f.mul(pbasis[t], base_row[c]);
            scaled_rows[j * d + t] = std::move(r);
        }
    }

    Vec cw(n(), 0);
    std::vector<gf_t> counter(digits, 0);
    if (!fn(cw, 0)) return;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::size_t pos = 0;
        for (;;) {
            for (std::size_t c = 0; c < cw.size(); ++c)
                cw[c] = f.add(cw[c], scaled_rows[pos][c]);
            if (++counter[pos] < p) break;
            counter[pos] = 0;
            ++pos;
        }
        if (!fn(cw, idx)) return;
    }
}

LinearCode LinearCode::dual() const {
    FMatrix h = gen_.nullspace_basis();
    if (h.rows() == 0)
        throw Error("dual of the full space is trivial; no generator exists");
    return LinearCode(std::move(h), "dual");
}

std::size_t LinearCode::min_distance() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->dmin) return *cache_->dmin;
    std::size_t best = n() + 1;
    enumerate_while([&](const Vec& cw, std::uint64_t idx) {
        if (idx == 0) return true;
        std::size_t w = hamming_weight(cw);
        if (w < best) best = w;
        return best > 1;  // cannot get lower than 1
    });
    cache_->dmin = best;
    return best;
}

std::size_t LinearCode::dual_distance() const {
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        if (cache_->dual_dmin) return *cache_->dual_dmin;
    }
    std::size_t val;
    if (k() == n()) {
        val = n() + 1;  // trivial dual sentinel
    } else {
        val = dual().min_distance();
    }
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->dual_dmin = val;
    return val;
}

std::map<std::size_t, std::uint64_t> LinearCode::weight_distribution() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->wdist) return *cache_->wdist;
    std::map<std::size_t, std::uint64_t> dist;
    enumerate_while([&](const Vec& cw, std::uint64_t) {
        ++dist[hamming_weight(cw)];
        return true;
    });
    cache_->wdist = dist;
    return dist;
}

std::map<std::size_t, std::uint64_t> LinearCode::signature(std::size_t i) const {
    if (i >= n()) throw DimensionMismatch("puncture position out of range");
    std::map<std::size_t, std::uint64_t> dist;
    enumerate_while([&](const Vec& cw, std::uint64_t) {
        std::size_t w = hamming_weight(cw);
        if (cw[i] != 0) --w;
        ++dist[w];
        return true;
    });
    return dist;
}

BmdResult LinearCode::bmd_decode(const Vec& r, std::size_t radius) const {
    if (r.size() != n()) throw DimensionMismatch("received word length mismatch");
    if (algebraic_) {
        auto cw = algebraic_(r);
        if (cw && hamming_distance(*cw, r) <= radius) return {std::move(cw)};
        return {std::nullopt};
    }
    std::size_t d = min_distance();
    if (2 * radius + 1 > d)
        throw Error("BMD radius exceeds half the minimum distance");
    std::optional<Vec> hit;
    enumerate_while([&](const Vec& cw, std::uint64_t) {
        if (hamming_distance(cw, r) <= radius) {
            hit = cw;
            return false;  // unique within the BMD radius
        }
        return true;
    });
    return {std::move(hit)};
}

std::vector<Vec> LinearCode::minimal_support_codewords(std::size_t weight_bound) const {
    std::vector<Vec> cand;
    std::vector<SupportMask> masks;
    enumerate_while([&](const Vec& cw, std::uint64_t idx) {
        if (idx == 0) return true;
        if (hamming_weight(cw) < weight_bound) {
            cand.push_back(cw);
            masks.push_back(SupportMask::of(cw));
        }
        return true;
    });
    std::vector<Vec> out;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        bool minimal = true;
        for (std::size_t j = 0; j < cand.size() && minimal; ++j) {
            if (j == i) continue;
            if (masks[j].subset_of(masks[i]) && !(masks[j] == masks[i])) minimal = false;
        }
        if (minimal) out.push_back(cand[i]);
    }
    return out;
}

void LinearCode::set_algebraic_decoder(std::function<std::optional<Vec>(const Vec&)> dec) {
    algebraic_ = std::move(dec);
}

bool LinearCode::same_codeword_set(const LinearCode& other) const {
    if (n() != other.n() || k() != other.k()) return false;
    if (!field()->same_field(*other.field())) return false;
    return gen_.same_row_space(other.generator());
}

std::vector<std::vector<std::size_t>> connected_components(const std::vector<Vec>& words,
                                                           std::size_t n) {
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::vector<bool> covered(n, false);
    for (const Vec& w : words) {
        std::size_t first = n;
        for (std::size_t i = 0; i < w.size() && i < n; ++i) {
            if (w[i] == 0) continue;
            covered[i] = true;
            if (first == n) {
                first = i;
            } else {
                parent[find(i)] = find(first);
            }
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> comps;
    for (std::size_t i = 0; i < n; ++i)
        if (covered[i]) comps[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    out.reserve(comps.size());
    for (auto& [root, members] : comps) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end());
    return out;
}

LinearCode rs_code(std::size_t n, std::size_t k, FieldPtr field) {
    const std::uint64_t order = field->order();
    if (k == 0 || k > n) throw ParametersInfeasible("need 1 <= k <= n");
    if (n > order)
        throw ParametersInfeasible("RS length exceeds the field size");
    const FieldTower& f = *field;

    Vec points(n);
    if (n == order) {
        for (std::size_t j = 0; j < n; ++j) points[j] = static_cast<gf_t>(j);
    } else {
        gf_t alpha = f.generator();
        gf_t cur = 1;
        for (std::size_t j = 0; j < n; ++j) {
            points[j] = cur;
            cur = f.mul(cur, alpha);
        }
    }

    FMatrix gen(field, k, n);
    for (std::size_t j = 0; j < n; ++j) {
        gf_t pw = 1;
        for (std::size_t i = 0; i < k; ++i) {
            gen(i, j) = pw;
            pw = f.mul(pw, points[j]);
        }
    }
    LinearCode code(std::move(gen), "rs", n - k + 1);

    // Gao decoding: interpolate, truncated extended Euclid, divide out.
    Vec g0{1};
    for (std::size_t j = 0; j < n; ++j) g0 = poly_mul(f, g0, Vec{f.neg(points[j]), 1});
    code.set_algebraic_decoder([field, points, g0, n, k](const Vec& r) -> std::optional<Vec> {
        const FieldTower& fl = *field;
        Vec g1 = poly_interpolate(fl, points, r);
        Vec r0 = g0, r1 = g1;
        Vec t0{}, t1{1};
        while (2 * static_cast<long long>(poly_deg(r1)) >= static_cast<long long>(n + k)) {
            auto [q, rem] = poly_divmod(fl, r0, r1);
            r0 = std::move(r1);
            r1 = std::move(rem);
            Vec tn = poly_sub(fl, t0, poly_mul(fl, q, t1));
            t0 = std::move(t1);
            t1 = std::move(tn);
        }
        if (poly_deg(t1) < 0) return std::nullopt;
        auto [fpoly, rem2] = poly_divmod(fl, r1, t1);
        if (poly_deg(rem2) >= 0) return std::nullopt;
        if (poly_deg(fpoly) >= static_cast<int>(k)) return std::nullopt;
        Vec cw(n);
        for (std::size_t j = 0; j < n; ++j) cw[j] = poly_eval(fl, fpoly, points[j]);
        return cw;
    });
    return code;
}

LinearCode random_code_with_distance(FieldPtr field, std::size_t n, std::size_t k,
                                     std::size_t d_min, std::uint64_t seed,
                                     std::uint64_t max_tries) {
    if (k == 0 || k > n) throw ParametersInfeasible("need 1 <= k <= n");
    for (std::uint64_t attempt = 0; attempt < max_tries; ++attempt) {
        Rng rng = Rng::derive(seed, attempt);
        FMatrix g = random_matrix(field, k, n, rng);
        if (g.rank() != k) continue;
        LinearCode code(g, "random");
        std::size_t dmin = n + 1;
        bool viable = true;
        code.enumerate_while([&](const Vec& cw, std::uint64_t idx) {
            if (idx == 0) return true;
            std::size_t w = hamming_weight(cw);
            if (w < dmin) dmin = w;
            if (dmin < d_min) {
                viable = false;
                return false;
            }
            return true;
        });
        if (!viable) continue;
        return LinearCode(std::move(g), "random", dmin);
    }
    throw GivesUpAfterMaxTries("no [" + std::to_string(n) + "," + std::to_string(k) + "] code with d >= " +
                               std::to_string(d_min) + " found in " + std::to_string(max_tries) +
                               " tries");
}

bool lemma2_check(const LinearCode& c, std::size_t r) {
    if (r == 0) return true;  // vacuous
    if (r > c.n()) throw DimensionMismatch("tuple width exceeds code length");
    if (r > c.k()) return false;  // q^(k-r) < 1 cannot be attained
    const std::uint64_t order = c.field()->order();
    std::uint64_t tuples = 1;
    for (std::size_t i = 0; i < r; ++i) {
        tuples *= order;
        if (tuples > kEnumerationCap) throw EnumerationTooLarge("tuple space too large");
    }
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < c.k() - r; ++i) expected *= order;

    // iterate r-subsets of columns in lexicographic order
    std::vector<std::size_t> cols(r);
    for (std::size_t i = 0; i < r; ++i) cols[i] = i;
    std::vector<std::uint64_t> counts(tuples);
    for (;;) {
        std::fill(counts.begin(), counts.end(), 0);
        c.enumerate_while([&](const Vec& cw, std::uint64_t) {
            std::uint64_t key = 0;
            for (std::size_t i = r; i > 0; --i) key = key * order + cw[cols[i - 1]];
            ++counts[key];
            return true;
        });
        for (std::uint64_t cnt : counts)
            if (cnt != expected) return false;
        // next combination
        std::size_t i = r;
        while (i > 0 && cols[i - 1] == c.n() - r + i - 1) --i;
        if (i == 0) break;
        ++cols[i - 1];
        for (std::size_t j = i; j < r; ++j) cols[j] = cols[j - 1] + 1;
    }
    return true;
}

}  // namespace gcmce
