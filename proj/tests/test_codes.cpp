#include <algorithm>
#include <set>
#include <thread>

#include "doctest.h"
#include "gcmce/codes.hpp"

using namespace gcmce;

namespace {

FMatrix mat(FieldPtr f, const std::vector<Vec>& rows) { return FMatrix::from_rows(f, rows); }

LinearCode repetition(FieldPtr f, std::size_t n) {
    return LinearCode(mat(f, {Vec(n, 1)}), "repetition");
}

LinearCode parity(FieldPtr f, std::size_t n) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Vec r(n, 0);
        r[i] = 1;
        r[n - 1] = f->neg(1);
        rows.push_back(r);
    }
    return LinearCode(mat(f, rows), "parity");
}

LinearCode hamming74(FieldPtr f2) {
    return LinearCode(mat(f2, {{1, 0, 0, 0, 1, 1, 0},
                               {0, 1, 0, 0, 1, 0, 1},
                               {0, 0, 1, 0, 0, 1, 1},
                               {0, 0, 0, 1, 1, 1, 1}}),
                      "hamming");
}

// independent oracle: all codewords by plain message sweep (no gray walk)
std::vector<Vec> all_codewords(const LinearCode& c) {
    const std::uint64_t order = c.field()->order();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < c.k(); ++i) total *= order;
    std::vector<Vec> out;
    out.reserve(total);
    for (std::uint64_t v = 0; v < total; ++v) {
        Vec msg(c.k());
        std::uint64_t t = v;
        for (std::size_t i = 0; i < c.k(); ++i) {
            msg[i] = static_cast<gf_t>(t % order);
            t /= order;
        }
        out.push_back(c.encode(msg));
    }
    return out;
}

}  // namespace

TEST_CASE("codeword enumeration agrees with the plain message sweep") {
    for (auto [q, m] : {std::pair<gf_t, unsigned>{2, 1}, {2, 2}, {3, 1}, {2, 3}}) {
        auto f = make_tower(q, m);
        Rng rng(17 + q + m);
        FMatrix g = random_matrix(f, 3, 6, rng);
        while (g.rank() != 3) g = random_matrix(f, 3, 6, rng);
        LinearCode c(g);
        auto oracle = all_codewords(c);
        std::size_t idx = 0;
        c.enumerate_while([&](const Vec& cw, std::uint64_t i) {
            REQUIRE(i == idx);
            CHECK(cw == oracle[idx]);
            ++idx;
            return true;
        });
        CHECK(idx == oracle.size());
    }
}

TEST_CASE("dual codes") {
    auto f2 = make_tower(2, 1);

    LinearCode rep = repetition(f2, 3);
    LinearCode d = rep.dual();
    CHECK(d.k() == 2);
    CHECK(d.same_codeword_set(parity(f2, 3)));
    CHECK(d.dual().same_codeword_set(rep));

    // G * H^T = 0 on a batch of random codes
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Rng rng(seed);
        FMatrix g = random_matrix(f2, 3, 7, rng);
        if (g.rank() != 3) continue;
        LinearCode c(g);
        FMatrix prod = c.generator() * c.dual().generator().transpose();
        CHECK(prod.is_zero());
    }

    LinearCode ham = hamming74(f2);
    LinearCode simplex = ham.dual();
    CHECK(simplex.k() == 3);
    CHECK(simplex.min_distance() == 4);
}

TEST_CASE("distances") {
    auto f2 = make_tower(2, 1);
    CHECK(distances(repetition(f2, 3)) == std::pair<std::size_t, std::size_t>{3, 2});
    CHECK(distances(hamming74(f2)) == std::pair<std::size_t, std::size_t>{3, 4});
    // full space: d = 1 and the trivial dual reports the sentinel n + 1
    LinearCode full(FMatrix::identity(f2, 4));
    CHECK(distances(full) == std::pair<std::size_t, std::size_t>{1, 5});

    LinearCode big(FMatrix::identity(make_tower(2, 2), 23));
    CHECK_THROWS_AS(big.min_distance(), EnumerationTooLarge);
}

TEST_CASE("signatures") {
    auto f2 = make_tower(2, 1);
    LinearCode rep = repetition(f2, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        auto sig = rep.signature(i);
        CHECK(sig == std::map<std::size_t, std::uint64_t>{{0, 1}, {2, 1}});
    }

    // full space signature: q * binomial histogram of GF(q)^(n-1)
    LinearCode full(FMatrix::identity(f2, 3));
    auto sig = full.signature(1);
    CHECK(sig == std::map<std::size_t, std::uint64_t>{{0, 2}, {1, 4}, {2, 2}});

    // invariance under permutations
    Rng rng(3);
    FMatrix g = random_matrix(f2, 3, 6, rng);
    while (g.rank() != 3) g = random_matrix(f2, 3, 6, rng);
    LinearCode c(g);
    PermMatrix p = PermMatrix::random(6, 99);
    LinearCode cp(p.apply_to_cols(g));
    for (std::size_t i = 0; i < 6; ++i) CHECK(cp.signature(p(i)) == c.signature(i));
}

TEST_CASE("bounded minimum distance decoding") {
    auto f2 = make_tower(2, 1);
    LinearCode rep = repetition(f2, 3);

    auto r1 = rep.bmd_decode(Vec{1, 0, 0}, 1);
    REQUIRE(!r1.failed());
    CHECK(*r1.codeword == Vec{0, 0, 0});

    auto r2 = rep.bmd_decode(Vec{1, 1, 1}, 1);
    REQUIRE(!r2.failed());
    CHECK(*r2.codeword == Vec{1, 1, 1});

    auto r3 = rep.bmd_decode(Vec{1, 1, 0}, 1);
    REQUIRE(!r3.failed());
    CHECK(*r3.codeword == Vec{1, 1, 1});

    CHECK_THROWS(rep.bmd_decode(Vec{1, 1, 0}, 2));  // radius above (d-1)/2
}

TEST_CASE("bmd agrees with the exhaustive oracle") {
    for (auto [q, m] : {std::pair<gf_t, unsigned>{2, 1}, {2, 2}}) {
        auto f = make_tower(q, m);
        LinearCode c = random_code_with_distance(f, 7, 3, 3, /*seed=*/5);
        auto words = all_codewords(c);
        std::size_t radius = (c.min_distance() - 1) / 2;
        Rng rng(77);
        for (int trial = 0; trial < 300; ++trial) {
            Vec r(7);
            for (auto& v : r) v = static_cast<gf_t>(rng.below(f->order()));
            auto res = c.bmd_decode(r, radius);
            // oracle: unique codeword within radius, if any
            const Vec* within = nullptr;
            for (const auto& w : words)
                if (hamming_distance(w, r) <= radius) within = &w;
            if (within == nullptr) {
                CHECK(res.failed());
            } else {
                REQUIRE(!res.failed());
                CHECK(*res.codeword == *within);
                CHECK(hamming_distance(*res.codeword, r) <= radius);
            }
        }
    }
}

TEST_CASE("minimal support codewords") {
    auto f2 = make_tower(2, 1);
    LinearCode par = parity(f2, 3);

    auto words = par.minimal_support_codewords(3);
    std::set<Vec> got(words.begin(), words.end());
    CHECK(got == std::set<Vec>{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});

    CHECK(par.minimal_support_codewords(1).empty());

    auto reps = repetition(f2, 3).minimal_support_codewords(4);
    CHECK(reps == std::vector<Vec>{{1, 1, 1}});
}

TEST_CASE("connected components") {
    auto comps = connected_components({{1, 1, 0, 0}, {0, 0, 1, 1}}, 4);
    CHECK(comps == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}});

    comps = connected_components({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}}, 4);
    CHECK(comps == std::vector<std::vector<std::size_t>>{{0, 1, 2, 3}});

    CHECK(connected_components({}, 4).empty());
}

TEST_CASE("reed-solomon codes") {
    auto f8 = make_tower(2, 3);
    LinearCode rs = rs_code(7, 3, f8);
    CHECK(rs.min_distance() == 5);  // MDS by construction
    // verify exhaustively as well
    std::size_t dmin = 99;
    for (const auto& w : all_codewords(rs))
        if (hamming_weight(w) != 0) dmin = std::min(dmin, hamming_weight(w));
    CHECK(dmin == 5);

    // MDS column property: every k columns of G are independent
    for (std::size_t a = 0; a < 7; ++a)
        for (std::size_t b = a + 1; b < 7; ++b)
            for (std::size_t c = b + 1; c < 7; ++c)
                CHECK(rs.generator().submatrix_cols({a, b, c}).rank() == 3);

    // decoding round trip up to 2 errors
    Rng rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        Vec msg(3);
        for (auto& v : msg) v = static_cast<gf_t>(rng.below(8));
        Vec cw = rs.encode(msg);
        Vec r = cw;
        std::size_t nerr = rng.below(3);
        for (auto pos : rng.sample_distinct(7, static_cast<std::uint32_t>(nerr)))
            r[pos] = f8->add(r[pos], static_cast<gf_t>(1 + rng.below(7)));
        auto res = rs.bmd_decode(r, 2);
        REQUIRE(!res.failed());
        CHECK(*res.codeword == cw);
        CHECK(rs.message_of(*res.codeword) == msg);
    }

    // algebraic decoder agrees with exhaustive nearest-codeword search
    auto words = all_codewords(rs);
    for (int trial = 0; trial < 150; ++trial) {
        Vec r(7);
        for (auto& v : r) v = static_cast<gf_t>(rng.below(8));
        auto res = rs.bmd_decode(r, 2);
        const Vec* within = nullptr;
        for (const auto& w : words)
            if (hamming_distance(w, r) <= 2) within = &w;
        if (within == nullptr)
            CHECK(res.failed());
        else {
            REQUIRE(!res.failed());
            CHECK(*res.codeword == *within);
        }
    }

    // full-length code over GF(2^7): d = n - k + 1 = 85
    LinearCode rs128 = rs_code(128, 44, make_tower(2, 7));
    CHECK(rs128.min_distance() == 85);
    CHECK(rs128.n() == 128);

    CHECK_THROWS_AS(rs_code(10, 3, f8), ParametersInfeasible);
}

TEST_CASE("random codes with distance guarantees") {
    auto f2 = make_tower(2, 1);

    LinearCode c1 = random_code_with_distance(f2, 3, 1, 3, 9);
    CHECK(c1.generator().row(0) == Vec{1, 1, 1});  // necessarily the repetition code

    LinearCode c2 = random_code_with_distance(f2, 16, 7, 5, 2024);
    CHECK(c2.min_distance() >= 5);
    std::size_t dmin = 99;
    for (const auto& w : all_codewords(c2))
        if (hamming_weight(w)) dmin = std::min(dmin, hamming_weight(w));
    CHECK(dmin == c2.min_distance());

    // no binary [3,2,3] exists (Singleton)
    CHECK_THROWS_AS(random_code_with_distance(f2, 3, 2, 3, 1, 200), GivesUpAfterMaxTries);
}

TEST_CASE("distance caches fill once under concurrent readers") {
    auto f2 = make_tower(2, 1);
    LinearCode seeded = random_code_with_distance(f2, 12, 5, 3, 77);
    LinearCode fresh(seeded.generator());  // empty caches
    std::vector<std::thread> threads;
    std::vector<std::size_t> dmin(4), ddual(4);
    for (int t = 0; t < 4; ++t)
        threads.emplace_back([&, t] {
            dmin[t] = fresh.min_distance();
            ddual[t] = fresh.dual_distance();
        });
    for (auto& th : threads) th.join();
    for (int t = 0; t < 4; ++t) {
        CHECK(dmin[t] == seeded.min_distance());
        CHECK(ddual[t] == seeded.dual_distance());
    }
}

TEST_CASE("tuple uniformity") {
    auto f2 = make_tower(2, 1);
    LinearCode par = parity(f2, 3);  // dual distance 3
    CHECK(lemma2_check(par, 0));
    CHECK(lemma2_check(par, 1));
    CHECK(lemma2_check(par, 2));
    CHECK_FALSE(lemma2_check(par, 3));  // r = dual distance fails
}
