#include <algorithm>
#include <set>

#include "doctest.h"
#include "gcmce/concat.hpp"

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

// the (8,4,4) desk construction: inner GF(2)^2, chain full > repetition,
// outers [4,1,4] and [4,3,2]
GcSpec rm_spec() {
    auto f2 = make_tower(2, 1);
    LinearCode inner(FMatrix::identity(f2, 2), "full");
    PartitionTree tree({FMatrix::identity(f2, 2), mat(f2, {{1, 1}})});
    return build_gcc(inner, tree, {repetition(f2, 4), parity(f2, 4)});
}

std::set<Vec> spec_codeword_set(const GcSpec& spec) {
    std::set<Vec> out;
    LinearCode c(spec.generator());
    c.enumerate_while([&](const Vec& w, std::uint64_t) {
        out.insert(w);
        return true;
    });
    return out;
}

}  // namespace

TEST_CASE("partition tree derives theta from the chain") {
    auto f2 = make_tower(2, 1);
    PartitionTree tree({FMatrix::identity(f2, 2), mat(f2, {{1, 1}})});
    CHECK(tree.levels() == 2);
    CHECK(tree.level_dim(1) == 1);
    CHECK(tree.level_dim(2) == 1);
    CHECK(tree.level_distance(1) == 1);  // full space
    CHECK(tree.level_distance(2) == 2);  // repetition
    CHECK(tree.theta().rank() == 2);
    CHECK(tree.theta().same_row_space(FMatrix::identity(f2, 2)));

    // explicit-theta construction round-trips the exact matrix
    PartitionTree tree2(tree.theta(), {1, 1});
    CHECK(tree2.theta() == tree.theta());
    CHECK(tree2.subcode(1).same_row_space(tree.subcode(1)));

    CHECK_THROWS_AS(PartitionTree({mat(f2, {{1, 1}}), FMatrix::identity(f2, 2)}),
                    DimensionMismatch);
}

TEST_CASE("the (8,4,4) construction is the first-order Reed-Muller code") {
    GcSpec spec = rm_spec();
    CHECK(spec.n_gc() == 8);
    CHECK(spec.k_gc() == 4);
    CHECK(spec.min_distance_bound() == 4);  // min(4*1, 2*2)

    auto words = spec_codeword_set(spec);
    CHECK(words.size() == 16);  // q^k_GC

    // exhaustive minimum distance
    std::size_t dmin = 99;
    for (const auto& w : words)
        if (hamming_weight(w)) dmin = std::min(dmin, hamming_weight(w));
    CHECK(dmin == 4);

    // RM(1,3) built independently: evaluations of affine functions at
    // points indexed by (inner bit b, block j): position 2j + b
    std::set<Vec> rm;
    for (unsigned a0 = 0; a0 < 2; ++a0)
        for (unsigned a1 = 0; a1 < 2; ++a1)
            for (unsigned a2 = 0; a2 < 2; ++a2)
                for (unsigned a3 = 0; a3 < 2; ++a3) {
                    Vec w(8);
                    for (unsigned j = 0; j < 4; ++j)
                        for (unsigned b = 0; b < 2; ++b)
                            w[2 * j + b] =
                                (a0 + a1 * b + a2 * (j & 1) + a3 * (j >> 1)) & 1;
                    rm.insert(w);
                }
    CHECK(words == rm);

    // generator has rank 4 and spans the same set
    CHECK(spec.generator().rows() == 4);
    CHECK(spec.generator().rank() == 4);
}

TEST_CASE("ordinary concatenation of RS(7,3) with the [4,3,2] parity code") {
    auto f2 = make_tower(2, 1);
    auto f8 = make_tower(2, 3);
    LinearCode inner = parity(f2, 4);  // k_B = 3
    PartitionTree tree({inner.generator(), mat(f2, {{1, 1, 0, 0}, {0, 1, 1, 0}}).rref(),
                        mat(f2, {{1, 1, 0, 0}})});
    // single-level OC construction uses the plain chain B > {0}
    PartitionTree oc_tree({inner.generator()});
    GcSpec spec = build_gcc(inner, oc_tree, {rs_code(7, 3, f8)});
    CHECK(spec.ell() == 1);
    CHECK(spec.n_gc() == 28);
    CHECK(spec.k_gc() == 9);
    CHECK(spec.min_distance_bound() == 10);  // 5 * 2

    // exhaustive distance of the 512-word code confirms the bound
    std::size_t dmin = 999;
    LinearCode c(spec.generator());
    c.enumerate_while([&](const Vec& w, std::uint64_t idx) {
        if (idx) dmin = std::min(dmin, hamming_weight(w));
        return true;
    });
    CHECK(dmin >= 10);
}

TEST_CASE("spec validation errors") {
    auto f2 = make_tower(2, 1);
    auto f4 = make_tower(2, 2);
    LinearCode inner(FMatrix::identity(f2, 2), "full");
    PartitionTree tree({FMatrix::identity(f2, 2), mat(f2, {{1, 1}})});

    // outer over GF(4) where k^(i) = 1 expects GF(2)
    CHECK_THROWS_AS(build_gcc(inner, tree, {repetition(f4, 4), parity(f2, 4)}),
                    FieldMismatch);
    // outer lengths differ
    CHECK_THROWS_AS(build_gcc(inner, tree, {repetition(f2, 5), parity(f2, 4)}),
                    DimensionMismatch);
    // level count mismatch
    CHECK_THROWS_AS(build_gcc(inner, tree, {repetition(f2, 4)}), DimensionMismatch);
}

TEST_CASE("encoding") {
    GcSpec spec = rm_spec();

    CHECK(spec.encode({{0}, {0, 0, 0}}) == Vec(8, 0));

    // message ((1),(0,0,0)): every block carries the level-1 coset label 1,
    // i.e. the level-1 representative row in each block
    Vec expected;
    auto rep_row = spec.tree(0).theta_rows(1).row(0);
    for (int j = 0; j < 4; ++j) expected.insert(expected.end(), rep_row.begin(), rep_row.end());
    CHECK(spec.encode({{1}, {0, 0, 0}}) == expected);

    // encode agrees with the generator on all 16 flat messages
    for (std::uint64_t v = 0; v < 16; ++v) {
        Vec flat(4);
        for (std::size_t i = 0; i < 4; ++i) flat[i] = static_cast<gf_t>((v >> i) & 1);
        CHECK(spec.encode_flat(flat) == spec.generator().mul_row_vec(flat));
        CHECK(spec.flatten(spec.unflatten(flat)) == flat);
    }
}

TEST_CASE("multistage decoding corrects up to half the designed distance") {
    GcSpec spec = rm_spec();
    auto f2 = make_tower(2, 1);

    for (std::uint64_t v = 0; v < 16; ++v) {
        Vec flat(4);
        for (std::size_t i = 0; i < 4; ++i) flat[i] = static_cast<gf_t>((v >> i) & 1);
        GcMessage msg = spec.unflatten(flat);
        Vec cw = spec.encode(msg);

        // zero errors
        auto dec0 = spec.decode_multistage(cw);
        REQUIRE(dec0.has_value());
        CHECK(*dec0 == msg);

        // every single error position
        for (std::size_t e = 0; e < 8; ++e) {
            Vec r = cw;
            r[e] = f2->add(r[e], 1);
            auto dec = spec.decode_multistage(r);
            REQUIRE(dec.has_value());
            CHECK(*dec == msg);
        }
    }
}

TEST_CASE("multistage decoding on the 512-word ordinary concatenation") {
    auto f2 = make_tower(2, 1);
    auto f8 = make_tower(2, 3);
    LinearCode inner = parity(f2, 4);
    PartitionTree oc_tree({inner.generator()});
    GcSpec spec = build_gcc(inner, oc_tree, {rs_code(7, 3, f8)});
    const std::size_t half = spec.min_distance_bound() / 2;  // bound 10 -> up to 4 errors

    Rng rng(555);
    for (int trial = 0; trial < 300; ++trial) {
        Vec flat(spec.k_gc());
        for (auto& v : flat) v = static_cast<gf_t>(rng.below(2));
        GcMessage msg = spec.unflatten(flat);
        Vec cw = spec.encode(msg);
        std::size_t nerr = rng.below(half);  // weight < bound/2
        Vec r = cw;
        for (auto pos : rng.sample_distinct(28, static_cast<std::uint32_t>(nerr)))
            r[pos] ^= 1;
        auto dec = spec.decode_multistage(r);
        REQUIRE(dec.has_value());
        CHECK(*dec == msg);
    }

    // exhaustive single and double errors
    Vec cw = spec.encode(spec.unflatten(Vec(9, 1)));
    for (std::size_t i = 0; i < 28; ++i) {
        for (std::size_t j = i; j < 28; ++j) {
            Vec r = cw;
            r[i] ^= 1;
            r[j] ^= 1;
            auto dec = spec.decode_multistage(r);
            REQUIRE(dec.has_value());
            CHECK(spec.encode(*dec) == cw);
        }
    }
}

TEST_CASE("degenerate single-symbol outer code reduces to the inner code") {
    auto f2 = make_tower(2, 1);
    auto f4 = make_tower(2, 2);
    LinearCode inner = parity(f2, 3);  // [3,2]
    PartitionTree tree({inner.generator()});
    LinearCode outer(FMatrix::identity(f4, 1), "full");  // [1,1] over GF(4)
    GcSpec spec = build_gcc(inner, tree, {outer});
    CHECK(spec.n_gc() == 3);
    CHECK(spec.k_gc() == 2);
    CHECK(spec.generator().same_row_space(inner.generator()));
}

TEST_CASE("occ equivalence classifier") {
    auto f2 = make_tower(2, 1);
    LinearCode inner(FMatrix::identity(f2, 2), "full");
    PartitionTree tree({FMatrix::identity(f2, 2), mat(f2, {{1, 1}})});

    GcSpec same = build_gcc(inner, tree, {repetition(f2, 4), repetition(f2, 4)});
    CHECK(occ_equivalence_check(same));

    GcSpec diff = build_gcc(inner, tree, {repetition(f2, 4), parity(f2, 4)});
    CHECK_FALSE(occ_equivalence_check(diff));

    // unequal level dimensions: theorem scope ends, checker refuses
    LinearCode inner3(FMatrix::identity(f2, 3), "full");
    PartitionTree tree3({FMatrix::identity(f2, 3), mat(f2, {{1, 1, 0}, {0, 1, 1}})});
    auto f4 = make_tower(2, 2);
    GcSpec mixed = build_gcc(inner3, tree3, {repetition(f2, 4), parity(f4, 4)});
    CHECK_THROWS_AS(occ_equivalence_check(mixed), NotApplicable);
}

TEST_CASE("occ classifier agrees with the GF(4)-linearity oracle") {
    // all pairs of outer codes of length 3 over GF(2), k^(i) = 1
    auto f2 = make_tower(2, 1);
    LinearCode inner(FMatrix::identity(f2, 2), "full");
    PartitionTree tree({FMatrix::identity(f2, 2), mat(f2, {{1, 1}})});
    auto f4 = make_tower(2, 2);
    const gf_t alpha = f4->generator();

    // enumerate all subspaces of GF(2)^3 with dim >= 1 by brute force over
    // generator candidates, dedup by codeword set
    std::vector<std::set<Vec>> subspaces;
    std::vector<LinearCode> codes;
    for (unsigned mask1 = 1; mask1 < 8; ++mask1) {
        for (unsigned mask2 = 0; mask2 < 8; ++mask2) {
            std::set<Vec> words;
            for (unsigned c1 = 0; c1 < 2; ++c1)
                for (unsigned c2 = 0; c2 < 2; ++c2) {
                    unsigned w = (c1 ? mask1 : 0) ^ (c2 ? mask2 : 0);
                    words.insert(Vec{static_cast<gf_t>(w & 1), static_cast<gf_t>((w >> 1) & 1),
                                     static_cast<gf_t>((w >> 2) & 1)});
                }
            if (std::find(subspaces.begin(), subspaces.end(), words) != subspaces.end())
                continue;
            subspaces.push_back(words);
            std::vector<Vec> rows;
            if (mask1)
                rows.push_back(Vec{static_cast<gf_t>(mask1 & 1), static_cast<gf_t>((mask1 >> 1) & 1),
                                   static_cast<gf_t>((mask1 >> 2) & 1)});
            if (mask2 && ((mask2 | mask1) != mask1) && words.size() == 4)
                rows.push_back(Vec{static_cast<gf_t>(mask2 & 1), static_cast<gf_t>((mask2 >> 1) & 1),
                                   static_cast<gf_t>((mask2 >> 2) & 1)});
            FMatrix g = FMatrix::from_rows(f2, rows);
            if (g.rank() != g.rows()) continue;
            codes.emplace_back(g);
        }
    }

    int checked = 0;
    for (std::size_t a = 0; a < codes.size(); ++a) {
        for (std::size_t b = 0; b < codes.size(); ++b) {
            GcSpec spec = build_gcc(inner, tree, {codes[a], codes[b]});
            bool is_occ = occ_equivalence_check(spec);

            // oracle: is ext^-1(A1 (+) A2) closed under multiplication by a
            // GF(4) generator?
            std::set<Vec> lifted;
            for (const Vec& w1 : subspaces[a])
                for (const Vec& w2 : subspaces[b]) {
                    Vec lift(3);
                    for (int i = 0; i < 3; ++i) lift[i] = f4->from_coeffs({w1[i], w2[i]});
                    lifted.insert(lift);
                }
            bool closed = true;
            for (const Vec& w : lifted) {
                Vec scaled(3);
                for (int i = 0; i < 3; ++i) scaled[i] = f4->mul(alpha, w[i]);
                if (!lifted.count(scaled)) {
                    closed = false;
                    break;
                }
            }
            CHECK(is_occ == closed);
            ++checked;
        }
    }
    CHECK(checked >= 49);  // 7+ subspaces of GF(2)^3 with dim in {1,2}, squared... at least
}

TEST_CASE("xi emptiness condition") {
    auto f2 = make_tower(2, 1);
    auto f4 = make_tower(2, 2);

    // inner [4,3,2] parity: d_B-dual = 4; a repetition outer has dual
    // distance 2 <= 4, so the low-weight dual set is provably empty
    LinearCode inner = parity(f2, 4);
    PartitionTree tree({inner.generator(), mat(f2, {{1, 1, 0, 0}, {0, 0, 1, 1}})});
    GcSpec spec1 = build_gcc(inner, tree, {repetition(f2, 5), parity(f4, 5)});
    auto xi1 = xi_emptiness_check(spec1);
    CHECK(xi1.xi_empty_guaranteed);
    CHECK(xi1.threshold == 2);  // min(2, 5, 8)

    // inner [2,1,2] repetition: d_B-dual = 2; parity outers have dual
    // distance 5 > 2, the sufficient condition does not fire
    LinearCode inner2 = repetition(f2, 2);
    PartitionTree tree2({inner2.generator()});
    GcSpec spec2 = build_gcc(inner2, tree2, {parity(f2, 5)});
    auto xi2 = xi_emptiness_check(spec2);
    CHECK_FALSE(xi2.xi_empty_guaranteed);
    CHECK(xi2.threshold == 4);  // min(5, 4)

    // single-level case with d_A-dual <= d_B-dual
    GcSpec spec3 = build_gcc(inner2, tree2, {repetition(f2, 5)});
    auto xi3 = xi_emptiness_check(spec3);
    CHECK(xi3.xi_empty_guaranteed);
    CHECK(xi3.threshold == 2);
}

TEST_CASE("per-block variant") {
    GcSpec base = rm_spec();
    auto f2 = make_tower(2, 1);

    // all blocks using the base tree behaves identically
    std::vector<PartitionTree> same_trees(4, base.tree(0));
    GcSpec variant = build_justesen_variant(base, same_trees);
    for (std::uint64_t v = 0; v < 16; ++v) {
        Vec flat(4);
        for (std::size_t i = 0; i < 4; ++i) flat[i] = static_cast<gf_t>((v >> i) & 1);
        CHECK(variant.encode_flat(flat) == base.encode_flat(flat));
    }

    // genuinely distinct per-block trees: swap the inner coordinates in two
    // blocks (full space stays the full space, the subcode changes)
    PartitionTree t_a({FMatrix::identity(f2, 2), mat(f2, {{1, 1}})});
    PartitionTree t_b({mat(f2, {{0, 1}, {1, 0}}), mat(f2, {{1, 0}})});
    GcSpec mixed = build_justesen_variant(base, {t_a, t_b, t_a, t_b});
    CHECK(mixed.per_block());

    for (std::uint64_t v = 0; v < 16; ++v) {
        Vec flat(4);
        for (std::size_t i = 0; i < 4; ++i) flat[i] = static_cast<gf_t>((v >> i) & 1);
        GcMessage msg = mixed.unflatten(flat);
        Vec cw = mixed.encode(msg);
        auto dec = mixed.decode_multistage(cw);
        REQUIRE(dec.has_value());
        CHECK(*dec == msg);
        // every block lies in that block's inner code
        for (std::size_t b = 0; b < 4; ++b) {
            Vec blockw(cw.begin() + 2 * b, cw.begin() + 2 * (b + 1));
            bool member = false;
            mixed.inner(b).enumerate_while([&](const Vec& w, std::uint64_t) {
                if (w == blockw) {
                    member = true;
                    return false;
                }
                return true;
            });
            CHECK(member);
        }
    }

    // mismatched inner length
    PartitionTree t_bad({FMatrix::identity(f2, 3), mat(f2, {{1, 1, 0}, {0, 1, 1}})});
    CHECK_THROWS_AS(build_justesen_variant(base, {t_a, t_a, t_a, t_bad}), DimensionMismatch);
    CHECK_THROWS_AS(build_justesen_variant(base, {t_a, t_a}), DimensionMismatch);
}

TEST_CASE("exhaustive distance respects the designed bound on all test specs") {
    auto f2 = make_tower(2, 1);
    auto f4 = make_tower(2, 2);
    std::vector<GcSpec> specs;
    specs.push_back(rm_spec());
    {
        LinearCode inner = parity(f2, 4);
        PartitionTree tree({inner.generator(), mat(f2, {{1, 1, 0, 0}, {0, 0, 1, 1}})});
        specs.push_back(build_gcc(inner, tree, {parity(f2, 5), parity(f4, 5)}));
    }
    for (const auto& spec : specs) {
        std::uint64_t count = 0;
        std::size_t dmin = spec.n_gc();
        LinearCode c(spec.generator());
        c.enumerate_while([&](const Vec& w, std::uint64_t idx) {
            ++count;
            if (idx) dmin = std::min(dmin, hamming_weight(w));
            return true;
        });
        std::uint64_t expected = 1;
        for (std::size_t i = 0; i < spec.k_gc(); ++i) expected *= spec.q();
        CHECK(count == expected);  // q^k_GC codewords
        CHECK(dmin >= spec.min_distance_bound());
    }
}

TEST_CASE("every codeword block lies in the inner code") {
    GcSpec spec = rm_spec();
    std::set<Vec> inner_words;
    spec.inner(0).enumerate_while([&](const Vec& w, std::uint64_t) {
        inner_words.insert(w);
        return true;
    });
    LinearCode c(spec.generator());
    c.enumerate_while([&](const Vec& w, std::uint64_t) {
        for (std::size_t b = 0; b < spec.n_a(); ++b) {
            Vec blockw(w.begin() + b * spec.n_b(), w.begin() + (b + 1) * spec.n_b());
            CHECK(inner_words.count(blockw) == 1);
        }
        return true;
    });
}
