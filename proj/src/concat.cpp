#include "gcmce/concat.hpp"

#include <algorithm>
#include <string>

#include "gcmce/errors.hpp"

namespace gcmce {

namespace {

// Rows of `super` (in RREF order) extending the row space of `sub`;
// together with `sub` they span `super`.
std::vector<Vec> complement_rows(const FMatrix& super, const FMatrix& sub) {
    FMatrix w = sub;
    std::size_t current = sub.rows() == 0 ? 0 : sub.rank();
    std::vector<Vec> out;
    FMatrix super_r = super.rref();
    for (std::size_t i = 0; i < super_r.rows(); ++i) {
        Vec row = super_r.row(i);
        FMatrix cand = w.vstack(FMatrix::from_rows(super.field(), {row}));
        if (cand.rank() > current) {
            out.push_back(row);
            w = std::move(cand);
            ++current;
        }
    }
    return out;
}

}  // namespace

PartitionTree::PartitionTree(std::vector<FMatrix> chain)
    : chain_(std::move(chain)),
      dist_cache_(std::make_shared<std::vector<std::optional<std::size_t>>>()),
      dist_mu_(std::make_shared<std::mutex>()) {
    if (chain_.empty()) throw DimensionMismatch("partition tree needs at least the inner code");
    const std::size_t n = chain_[0].cols();
    zero_ = FMatrix(chain_[0].field(), 0, n);
    std::size_t prev_dim = chain_[0].rows() + 1;
    for (std::size_t j = 0; j < chain_.size(); ++j) {
        if (chain_[j].cols() != n) throw DimensionMismatch("subcode length mismatch in chain");
        std::size_t dim = chain_[j].rank();
        if (dim != chain_[j].rows())
            throw DimensionMismatch("subcode generator must have full row rank");
        if (dim == 0) throw DimensionMismatch("trailing zero code is implied, do not pass it");
        if (dim >= prev_dim) throw DimensionMismatch("chain dimensions must strictly decrease");
        if (j > 0 && chain_[j - 1].vstack(chain_[j]).rank() != chain_[j - 1].rows())
            throw DimensionMismatch("chain member is not a subcode of its predecessor");
        prev_dim = dim;
    }
    // theta rows, level-major
    std::vector<Vec> rows;
    offsets_.resize(levels());
    for (std::size_t i = 1; i <= levels(); ++i) {
        const FMatrix& super = chain_[i - 1];
        const FMatrix& sub = i < chain_.size() ? chain_[i] : zero_;
        offsets_[i - 1] = rows.size();
        for (auto& r : complement_rows(super, sub)) rows.push_back(std::move(r));
    }
    theta_ = FMatrix::from_rows(chain_[0].field(), rows);
    if (theta_.rows() != k_b() || theta_.rank() != k_b())
        throw ThetaNotInjective("coset representative rows do not span the inner code");
    dist_cache_->assign(levels(), std::nullopt);
}

PartitionTree::PartitionTree(const FMatrix& theta, const std::vector<std::size_t>& level_dims)
    : dist_cache_(std::make_shared<std::vector<std::optional<std::size_t>>>()),
      dist_mu_(std::make_shared<std::mutex>()) {
    if (level_dims.empty()) throw DimensionMismatch("need at least one level");
    std::size_t total = 0;
    for (auto d : level_dims) {
        if (d == 0) throw DimensionMismatch("level dimensions must be positive");
        total += d;
    }
    if (total != theta.rows())
        throw DimensionMismatch("level dimensions do not sum to the theta row count");
    if (theta.rank() != theta.rows())
        throw ThetaNotInjective("theta rows are linearly dependent");
    theta_ = theta;
    zero_ = FMatrix(theta.field(), 0, theta.cols());
    offsets_.resize(level_dims.size());
    std::size_t off = 0;
    for (std::size_t i = 0; i < level_dims.size(); ++i) {
        offsets_[i] = off;
        off += level_dims[i];
    }
    // chain member j spans the theta rows of levels j+1..l
    for (std::size_t j = 0; j < level_dims.size(); ++j) {
        std::vector<Vec> rows;
        for (std::size_t rr = offsets_[j]; rr < total; ++rr) rows.push_back(theta.row(rr));
        if (j == 0) {
            chain_.push_back(FMatrix::from_rows(theta.field(), rows));
        } else {
            chain_.push_back(rows.empty() ? zero_ : FMatrix::from_rows(theta.field(), rows));
        }
    }
    dist_cache_->assign(levels(), std::nullopt);
}

const FMatrix& PartitionTree::subcode(std::size_t j) const {
    if (j < chain_.size()) return chain_[j];
    return zero_;
}

std::size_t PartitionTree::subcode_dim(std::size_t j) const {
    return j < chain_.size() ? chain_[j].rows() : 0;
}

std::size_t PartitionTree::level_dim(std::size_t i) const {
    return subcode_dim(i - 1) - subcode_dim(i);
}

std::size_t PartitionTree::level_distance(std::size_t i) const {
    std::lock_guard<std::mutex> lock(*dist_mu_);
    auto& slot = (*dist_cache_)[i - 1];
    if (!slot) slot = LinearCode(chain_[i - 1]).min_distance();
    return *slot;
}

FMatrix PartitionTree::theta_rows(std::size_t i) const {
    std::vector<Vec> rows;
    std::size_t count = level_dim(i);
    for (std::size_t r = 0; r < count; ++r) rows.push_back(theta_.row(offsets_[i - 1] + r));
    return FMatrix::from_rows(theta_.field(), rows);
}

GcSpec::GcSpec(LinearCode inner, PartitionTree tree, std::vector<LinearCode> outers) {
    inners_.push_back(std::move(inner));
    trees_.push_back(std::move(tree));
    outers_ = std::move(outers);
    validate_and_finish();
}

void GcSpec::validate_and_finish() {
    gen_cache_ = std::make_shared<std::optional<FMatrix>>();
    gen_mu_ = std::make_shared<std::mutex>();
    if (outers_.empty()) throw DimensionMismatch("need at least one outer code");
    for (std::size_t b = 0; b < inners_.size(); ++b) {
        const LinearCode& in = inners_[b];
        const PartitionTree& tr = trees_[b];
        if (in.field()->m() != 1)
            throw FieldMismatch("inner code must live over a degree-1 tower GF(q)");
        if (tr.n_b() != in.n() || tr.k_b() != in.k())
            throw DimensionMismatch("partition tree does not match the inner code");
        if (!tr.subcode(0).same_row_space(in.generator()))
            throw DimensionMismatch("partition tree root differs from the inner code");
        if (tr.levels() != outers_.size())
            throw DimensionMismatch("partition tree levels != number of outer codes");
        if (!tr.theta().same_row_space(in.generator()))
            throw ThetaNotInjective("theta image is not the inner code");
        if (b > 0) {
            if (tr.n_b() != trees_[0].n_b())
                throw DimensionMismatch("per-block inner lengths differ");
            for (std::size_t i = 1; i <= tr.levels(); ++i)
                if (tr.level_dim(i) != trees_[0].level_dim(i))
                    throw DimensionMismatch("per-block level dimensions differ");
        }
    }
    const gf_t q0 = inners_[0].field()->q();
    const std::size_t na = outers_[0].n();
    k_gc_ = 0;
    for (std::size_t i = 0; i < outers_.size(); ++i) {
        const LinearCode& a = outers_[i];
        if (a.n() != na) throw DimensionMismatch("outer codes must share one length");
        if (a.field()->q() != q0 || a.field()->m() != trees_[0].level_dim(i + 1))
            throw FieldMismatch("outer code " + std::to_string(i + 1) +
                                " is not defined over GF(q^k(i))");
        k_gc_ += trees_[0].level_dim(i + 1) * a.k();
    }
    if (per_block() && trees_.size() != na)
        throw DimensionMismatch("need one tree per inner block");
}

Vec GcSpec::flatten(const GcMessage& msg) const {
    if (msg.size() != ell()) throw DimensionMismatch("message level count mismatch");
    Vec flat;
    flat.reserve(k_gc_);
    for (std::size_t i = 0; i < ell(); ++i) {
        const LinearCode& a = outers_[i];
        if (msg[i].size() != a.k()) throw DimensionMismatch("message component length mismatch");
        for (gf_t sym : msg[i]) {
            Vec c = a.field()->coeffs(sym);
            flat.insert(flat.end(), c.begin(), c.end());
        }
    }
    return flat;
}

GcMessage GcSpec::unflatten(const Vec& flat) const {
    if (flat.size() != k_gc_) throw DimensionMismatch("flattened message length mismatch");
    GcMessage msg(ell());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < ell(); ++i) {
        const LinearCode& a = outers_[i];
        const unsigned mi = a.field()->m();
        msg[i].resize(a.k());
        for (std::size_t s = 0; s < a.k(); ++s) {
            Vec c(flat.begin() + pos, flat.begin() + pos + mi);
            msg[i][s] = a.field()->from_coeffs(c);
            pos += mi;
        }
    }
    return msg;
}

Vec GcSpec::encode(const GcMessage& msg) const {
    if (msg.size() != ell()) throw DimensionMismatch("message level count mismatch");
    std::vector<Vec> outer_words(ell());
    for (std::size_t i = 0; i < ell(); ++i) outer_words[i] = outers_[i].encode(msg[i]);

    Vec out;
    out.reserve(n_gc());
    for (std::size_t b = 0; b < n_a(); ++b) {
        Vec label;
        label.reserve(k_b());
        for (std::size_t i = 0; i < ell(); ++i) {
            Vec c = outers_[i].field()->coeffs(outer_words[i][b]);
            label.insert(label.end(), c.begin(), c.end());
        }
        Vec block = theta(b).mul_row_vec(label);
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

const FMatrix& GcSpec::generator() const {
    std::lock_guard<std::mutex> lock(*gen_mu_);
    if (!gen_cache_->has_value()) {
        std::vector<Vec> rows(k_gc_);
        for (std::size_t t = 0; t < k_gc_; ++t) {
            Vec unit(k_gc_, 0);
            unit[t] = 1;
            rows[t] = encode(unflatten(unit));
        }
        FMatrix g = FMatrix::from_rows(inners_[0].field(), rows);
        if (g.rank() != k_gc_) throw ThetaNotInjective("generator rank below k_GC");
        *gen_cache_ = std::move(g);
    }
    return **gen_cache_;
}

std::optional<GcMessage> GcSpec::decode_multistage(const Vec& received) const {
    if (received.size() != n_gc()) throw DimensionMismatch("received word length mismatch");
    const FieldTower& base = *inners_[0].field();
    Vec residual = received;
    GcMessage decided(ell());

    for (std::size_t lvl = 1; lvl <= ell(); ++lvl) {
        const LinearCode& a = outers_[lvl - 1];
        const FieldTower& at = *a.field();
        const std::uint64_t labels = at.order();

        // per-block distance from the residual block to each label's coset
        std::vector<std::vector<std::size_t>> coset_dist(n_a(),
                                                         std::vector<std::size_t>(labels, 0));
        for (std::size_t b = 0; b < n_a(); ++b) {
            const PartitionTree& tr = tree(b);
            FMatrix rows = tr.theta_rows(lvl);
            // enumerate the subcode below this level once
            std::vector<Vec> sub_words;
            if (tr.subcode_dim(lvl) == 0) {
                sub_words.push_back(Vec(n_b(), 0));
            } else {
                LinearCode sub(tr.subcode(lvl));
                sub.enumerate_while([&](const Vec& w, std::uint64_t) {
                    sub_words.push_back(w);
                    return true;
                });
            }
            Vec res_block(residual.begin() + b * n_b(), residual.begin() + (b + 1) * n_b());
            for (std::uint64_t label = 0; label < labels; ++label) {
                Vec rep = rows.mul_row_vec(at.coeffs(static_cast<gf_t>(label)));
                std::size_t best = n_b() + 1;
                for (const Vec& w : sub_words) {
                    std::size_t dist = 0;
                    for (std::size_t c = 0; c < n_b(); ++c)
                        if (base.add(rep[c], w[c]) != res_block[c]) ++dist;
                    if (dist < best) best = dist;
                }
                coset_dist[b][label] = best;
            }
        }

        // exhaustive outer decision minimizing the summed coset distances
        std::size_t best_cost = static_cast<std::size_t>(-1);
        Vec best_word;
        std::size_t ties = 0;
        a.enumerate_while([&](const Vec& word, std::uint64_t) {
            std::size_t cost = 0;
            for (std::size_t b = 0; b < n_a(); ++b) cost += coset_dist[b][word[b]];
            if (cost < best_cost) {
                best_cost = cost;
                best_word = word;
                ties = 1;
            } else if (cost == best_cost) {
                ++ties;
            }
            return true;
        });
        if (ties != 1) return std::nullopt;

        decided[lvl - 1] = a.message_of(best_word);

        // strip the decided level from the residual
        for (std::size_t b = 0; b < n_a(); ++b) {
            Vec rep = tree(b).theta_rows(lvl).mul_row_vec(at.coeffs(best_word[b]));
            for (std::size_t c = 0; c < n_b(); ++c) {
                gf_t& cell = residual[b * n_b() + c];
                cell = base.sub(cell, rep[c]);
            }
        }
    }
    return decided;
}

std::size_t GcSpec::min_distance_bound() const {
    std::size_t best = static_cast<std::size_t>(-1);
    for (std::size_t b = 0; b < trees_.size(); ++b) {
        for (std::size_t lvl = 1; lvl <= ell(); ++lvl) {
            std::size_t prod = outers_[lvl - 1].min_distance() * trees_[b].level_distance(lvl);
            best = std::min(best, prod);
        }
    }
    return best;
}

bool GcSpec::block_signatures_pairwise_distinct() const {
    if (!per_block()) return false;
    for (std::size_t a = 0; a < inners_.size(); ++a) {
        for (std::size_t b = a + 1; b < inners_.size(); ++b) {
            for (std::size_t j = 0; j < n_b(); ++j) {
                if (inners_[a].signature(j) == inners_[b].signature(j)) return false;
            }
        }
    }
    return true;
}

GcSpec build_justesen_variant(const GcSpec& base, std::vector<PartitionTree> per_block_trees) {
    if (per_block_trees.size() != base.n_a())
        throw DimensionMismatch("need exactly n_A per-block trees");
    GcSpec out;
    out.trees_ = std::move(per_block_trees);
    out.inners_.reserve(out.trees_.size());
    for (const auto& tr : out.trees_) out.inners_.emplace_back(tr.subcode(0));
    for (std::size_t i = 0; i < base.ell(); ++i) out.outers_.push_back(base.outer(i));
    out.validate_and_finish();
    return out;
}

bool occ_equivalence_check(const GcSpec& spec) {
    const std::size_t k1 = spec.level_dim(0);
    for (std::size_t i = 1; i < spec.ell(); ++i) {
        if (spec.level_dim(i) != k1)
            throw NotApplicable("equal level dimensions required; the general case is open");
    }
    for (std::size_t i = 1; i < spec.ell(); ++i) {
        if (!spec.outer(0).same_codeword_set(spec.outer(i))) return false;
    }
    return true;
}

XiCheck xi_emptiness_check(const GcSpec& spec) {
    std::size_t db_dual = static_cast<std::size_t>(-1);
    std::size_t blocks = spec.per_block() ? spec.n_a() : 1;
    for (std::size_t b = 0; b < blocks; ++b)
        db_dual = std::min(db_dual, spec.inner(b).dual_distance());
    std::size_t min_outer_dual = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < spec.ell(); ++i)
        min_outer_dual = std::min(min_outer_dual, spec.outer(i).dual_distance());
    XiCheck r;
    r.threshold = std::min(min_outer_dual, 2 * db_dual);
    r.xi_empty_guaranteed = min_outer_dual <= db_dual;
    return r;
}

}  // namespace gcmce
