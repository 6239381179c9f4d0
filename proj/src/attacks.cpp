#include "gcmce/attacks.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <string>

#include "gcmce/errors.hpp"

namespace gcmce {

namespace {

constexpr std::uint64_t kCosetCap = 4096;     // solution-coset enumeration limit
constexpr unsigned kBlowupsBeforeGrow = 25;   // consecutive blowups before widening

// Tests candidate solutions of x * A_cols = b, including the full solution
// coset on underdetermined draws (up to kCosetCap candidates). Returns the
// first x passing `accept`, or nullopt; sets `blown` when the coset was too
// large to enumerate.
std::optional<Vec> solve_and_test(const FMatrix& g, const std::vector<std::size_t>& cols,
                                  const Vec& r, bool& blown,
                                  const std::function<bool(const Vec&)>& accept) {
    blown = false;
    Vec b(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) b[i] = r[cols[i]];
    FMatrix a = g.submatrix_cols(cols);
    SolveResult res = solve_right(a, b);
    if (!res.ok()) return std::nullopt;
    if (res.status == SolveResult::Status::unique) {
        if (accept(res.solution)) return res.solution;
        return std::nullopt;
    }
    const FieldTower& f = *g.field();
    const std::size_t nu = res.nullspace.rows();
    const std::uint64_t order = f.order();
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < nu; ++i) {
        combos *= order;
        if (combos > kCosetCap) {
            blown = true;
            return std::nullopt;
        }
    }
    for (std::uint64_t v = 0; v < combos; ++v) {
        Vec x = res.solution;
        std::uint64_t tv = v;
        for (std::size_t i = 0; i < nu; ++i) {
            gf_t lambda = static_cast<gf_t>(tv % order);
            tv /= order;
            if (lambda == 0) continue;
            for (std::size_t j = 0; j < x.size(); ++j)
                x[j] = f.add(x[j], f.mul(lambda, res.nullspace(i, j)));
        }
        if (accept(x)) return x;
    }
    return std::nullopt;
}

}  // namespace

void BlockPartition::validate(std::size_t n) const {
    if (blocks.empty()) throw DimensionMismatch("empty partition");
    std::vector<bool> seen(n, false);
    const std::size_t nb = blocks[0].size();
    std::size_t covered = 0;
    for (const auto& blk : blocks) {
        if (blk.size() != nb) throw DimensionMismatch("partition blocks differ in size");
        for (auto pos : blk) {
            if (pos >= n || seen[pos]) throw DimensionMismatch("partition is not disjoint covering");
            seen[pos] = true;
            ++covered;
        }
    }
    if (covered != n) throw DimensionMismatch("partition does not cover all positions");
}

std::vector<std::size_t> BlockPartition::columns_of(
    const std::vector<std::size_t>& block_indices) const {
    std::vector<std::size_t> cols;
    for (auto bi : block_indices)
        cols.insert(cols.end(), blocks[bi].begin(), blocks[bi].end());
    return cols;
}

IsdResult isd_attack(const FMatrix& g_pub, const Vec& r, std::size_t t, std::size_t delta,
                     std::uint64_t max_iters, std::uint64_t seed) {
    const std::size_t n = g_pub.cols();
    if (r.size() != n) throw DimensionMismatch("cryptogram length mismatch");
    if (delta == 0 || delta > n) throw InfeasibleParameters("delta out of range");
    Rng rng(seed);
    auto accept = [&](const Vec& m_hat) {
        return hamming_distance(g_pub.mul_row_vec(m_hat), r) <= t;
    };
    unsigned blowups = 0;
    for (std::uint64_t iter = 1; iter <= max_iters; ++iter) {
        auto coords32 = rng.sample_distinct(static_cast<std::uint32_t>(n),
                                            static_cast<std::uint32_t>(delta));
        std::vector<std::size_t> coords(coords32.begin(), coords32.end());
        bool blown = false;
        auto hit = solve_and_test(g_pub, coords, r, blown, accept);
        if (hit) return {std::move(*hit), iter, delta};
        if (blown) {
            if (++blowups >= kBlowupsBeforeGrow && delta < n) {
                ++delta;
                blowups = 0;
            }
        } else {
            blowups = 0;
        }
    }
    throw MaxItersExceeded("no information set found within " + std::to_string(max_iters) +
                           " iterations");
}

BlockPartition sendrier_step1(const FMatrix& g_pub, std::size_t n_a, std::size_t n_b,
                              std::size_t weight_bound) {
    const std::size_t n = g_pub.cols();
    if (n_a * n_b != n) throw DimensionMismatch("n_a * n_b must equal the code length");
    LinearCode pub(g_pub);
    LinearCode dual = pub.dual();
    auto words = dual.minimal_support_codewords(weight_bound);
    auto comps = connected_components(words, n);
    if (comps.size() != n_a)
        throw InsufficientWords("found " + std::to_string(comps.size()) +
                                " components, expected " + std::to_string(n_a));
    for (const auto& comp : comps)
        if (comp.size() != n_b)
            throw InsufficientWords("component size " + std::to_string(comp.size()) +
                                    " != n_b = " + std::to_string(n_b));
    BlockPartition part{std::move(comps)};
    part.validate(n);
    return part;
}

BlockPartition sendrier_step1_auto(const FMatrix& g_pub, std::size_t n_a, std::size_t n_b) {
    const std::size_t n = g_pub.cols();
    const std::size_t k = g_pub.rows();
    std::size_t kb_est = std::max<std::size_t>(1, (k * n_b + n / 2) / n);
    std::size_t start = n_b > kb_est ? 2 * (n_b - kb_est) : 2;
    if (start < 2) start = 2;
    for (std::size_t bound = start; bound <= n_b + 1; ++bound) {
        try {
            return sendrier_step1(g_pub, n_a, n_b, bound);
        } catch (const InsufficientWords&) {
            // widen and retry
        }
    }
    throw InsufficientWords("no weight bound up to n_b + 1 produced n_a equal components");
}

Step2Result sendrier_step2(const FMatrix& g_pub, const BlockPartition& partition,
                           bool allow_ambiguous) {
    partition.validate(g_pub.cols());
    auto codes = block_generators(g_pub, partition);
    const std::size_t nb = partition.n_b();

    using Sig = std::map<std::size_t, std::uint64_t>;
    std::vector<Sig> ref_sigs(nb);
    for (std::size_t j = 0; j < nb; ++j) ref_sigs[j] = codes[0].signature(j);

    // ambiguity = repeated signatures within the reference block
    std::map<Sig, std::vector<std::size_t>> classes;
    for (std::size_t j = 0; j < nb; ++j) classes[ref_sigs[j]].push_back(j);
    std::uint64_t multiplicity = 1;
    for (const auto& [sig, members] : classes)
        for (std::size_t i = 2; i <= members.size(); ++i) multiplicity *= i;
    if (multiplicity != 1 && !allow_ambiguous)
        throw AmbiguousSignatures("positions share a signature; " +
                                  std::to_string(multiplicity) +
                                  " consistent alignments exist");

    Step2Result out;
    out.multiplicity = multiplicity;
    out.alignments.resize(partition.n_a());
    for (std::size_t j = 0; j < nb; ++j) out.alignments[0].push_back(j);

    for (std::size_t b = 1; b < partition.n_a(); ++b) {
        std::map<Sig, std::vector<std::size_t>> avail = classes;
        std::vector<std::size_t> align(nb, 0);
        for (std::size_t j = 0; j < nb; ++j) {
            Sig s = codes[b].signature(j);
            auto it = avail.find(s);
            if (it == avail.end() || it->second.empty())
                throw SignatureMismatch("block " + std::to_string(b) +
                                        " has no consistent signature alignment with block 0");
            align[j] = it->second.front();  // lexicographically smallest choice
            it->second.erase(it->second.begin());
        }
        out.alignments[b] = std::move(align);
    }
    return out;
}

std::vector<std::size_t> aligned_column_order(const BlockPartition& partition,
                                              const Step2Result& alignment) {
    std::vector<std::size_t> order;
    order.reserve(partition.n_a() * partition.n_b());
    for (std::size_t b = 0; b < partition.n_a(); ++b) {
        // place block b's columns so that column mapped to reference slot s
        // comes s-th
        std::vector<std::size_t> slot(partition.n_b());
        for (std::size_t j = 0; j < partition.n_b(); ++j)
            slot[alignment.alignments[b][j]] = partition.blocks[b][j];
        order.insert(order.end(), slot.begin(), slot.end());
    }
    return order;
}

FMatrix apply_alignment(const FMatrix& g_pub, const BlockPartition& partition,
                        const Step2Result& alignment) {
    return g_pub.submatrix_cols(aligned_column_order(partition, alignment));
}

LinearCode sendrier_step3_1(const FMatrix& g_aligned, std::size_t n_b) {
    FMatrix r = g_aligned.rref();
    // in echelon form, rows with pivots past column n_b vanish on the first
    // n_b columns, so the top rows restricted there generate the block code
    std::vector<std::size_t> piv;
    g_aligned.rref(&piv);
    std::size_t kb = 0;
    for (auto c : piv)
        if (c < n_b) ++kb;
    if (kb == 0) throw RankDeficientBlock("first block columns are all zero");
    std::vector<Vec> rows(kb);
    for (std::size_t i = 0; i < kb; ++i) {
        rows[i].resize(n_b);
        for (std::size_t j = 0; j < n_b; ++j) rows[i][j] = r(i, j);
    }
    FMatrix sub = FMatrix::from_rows(g_aligned.field(), rows);
    if (sub.rank() != kb) throw RankDeficientBlock("block submatrix lost rank");
    return LinearCode(std::move(sub), "recovered-inner");
}

std::vector<LinearCode> block_generators(const FMatrix& g_pub, const BlockPartition& partition) {
    partition.validate(g_pub.cols());
    std::vector<LinearCode> out;
    out.reserve(partition.n_a());
    for (const auto& blk : partition.blocks) {
        FMatrix sub = g_pub.submatrix_cols(blk);
        std::vector<std::size_t> piv;
        FMatrix r = sub.rref(&piv);
        std::vector<Vec> rows(piv.size());
        for (std::size_t i = 0; i < piv.size(); ++i) rows[i] = r.row(i);
        out.emplace_back(FMatrix::from_rows(g_pub.field(), rows), "recovered-block");
    }
    return out;
}

AttackReport nonstructural_attack(const FMatrix& g_pub, const Vec& r, std::size_t t,
                                  const BlockPartition& partition,
                                  const std::vector<LinearCode>& block_codes, std::size_t tau,
                                  std::uint64_t max_iters, std::uint64_t seed,
                                  std::optional<std::size_t> d_gc,
                                  const Vec* ground_truth_codeword) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = g_pub.cols();
    const std::size_t k = g_pub.rows();
    if (r.size() != n) throw DimensionMismatch("cryptogram length mismatch");
    partition.validate(n);
    if (block_codes.size() != partition.n_a())
        throw DimensionMismatch("need one block code per block");

    AttackReport rep;

    // Part 1: bounded-minimum-distance decoding of every inner block
    std::vector<std::size_t> non_failed;
    for (std::size_t b = 0; b < partition.n_a(); ++b) {
        const auto& blk = partition.blocks[b];
        Vec rb(blk.size());
        for (std::size_t i = 0; i < blk.size(); ++i) rb[i] = r[blk[i]];
        std::size_t radius = (block_codes[b].min_distance() - 1) / 2;
        BmdResult res = block_codes[b].bmd_decode(rb, radius);
        if (res.failed()) {
            ++rep.n_failed;
        } else {
            ++rep.n_decoded;
            non_failed.push_back(b);
        }
        if (ground_truth_codeword) {
            Vec truth(blk.size());
            for (std::size_t i = 0; i < blk.size(); ++i) truth[i] = (*ground_truth_codeword)[blk[i]];
            rep.per_block.push_back(classify(res, truth));
        }
    }
    if (ground_truth_codeword) {
        std::size_t nc = 0, nw = 0;
        for (const auto& o : rep.per_block) {
            if (o.status == DecodeStatus::correct) ++nc;
            if (o.status == DecodeStatus::wrong) ++nw;
        }
        rep.n_correct = nc;
        rep.n_wrong = nw;
    }

    // Part 2: information-set decoding over non-failed blocks
    const std::size_t kb = block_codes[0].k();
    if (tau == 0) tau = (k + kb - 1) / kb;
    if (tau > non_failed.size())
        throw TooFewCleanBlocks("tau = " + std::to_string(tau) + " but only " +
                                std::to_string(non_failed.size()) + " blocks decoded");

    auto accept = [&](const Vec& m_hat) {
        std::size_t dist = hamming_distance(g_pub.mul_row_vec(m_hat), r);
        if (d_gc) return 2 * dist < *d_gc;
        return dist <= t;
    };

    Rng rng(seed);
    unsigned blowups = 0;
    for (std::uint64_t iter = 1; iter <= max_iters; ++iter) {
        auto pick = rng.sample_distinct(static_cast<std::uint32_t>(non_failed.size()),
                                        static_cast<std::uint32_t>(tau));
        std::vector<std::size_t> chosen;
        chosen.reserve(tau);
        for (auto p : pick) chosen.push_back(non_failed[p]);
        auto cols = partition.columns_of(chosen);
        bool blown = false;
        auto hit = solve_and_test(g_pub, cols, r, blown, accept);
        if (hit) {
            rep.message = std::move(*hit);
            rep.iterations = iter;
            rep.tau_used = tau;
            rep.accept_distance = hamming_distance(g_pub.mul_row_vec(*rep.message), r);
            rep.elapsed_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return rep;
        }
        if (blown) {
            if (++blowups >= kBlowupsBeforeGrow && tau < non_failed.size()) {
                ++tau;
                blowups = 0;
            }
        } else {
            blowups = 0;
        }
    }
    throw MaxItersExceeded("no clean block subset found within " + std::to_string(max_iters) +
                           " iterations");
}

}  // namespace gcmce
