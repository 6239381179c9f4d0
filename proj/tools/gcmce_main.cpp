// Command-line workbench: key lifecycle, encryption, attack execution,
// decoder simulation and work-factor reports for McEliece over
// (generalized) concatenated codes.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gcmce/attacks.hpp"
#include "gcmce/io.hpp"
#include "gcmce/mceliece.hpp"
#include "gcmce/workfactor.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace gcmce;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 1;
    unsigned workers = 1;
    bool pretty = false;
};

void emit(const json& out, const GlobalOpts& g) {
    if (g.pretty) {
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << out.dump() << '\n';
    }
}

PublicKey load_public(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    return read_public_key(f);
}

std::pair<FieldPtr, Vec> load_ct(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    return read_cryptogram(f);
}

BlockPartition load_partition(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    json j = json::parse(f);
    BlockPartition part;
    for (const auto& blk : j.at("blocks"))
        part.blocks.push_back(blk.get<std::vector<std::size_t>>());
    return part;
}

json partition_to_json(const BlockPartition& part) {
    json j;
    j["blocks"] = part.blocks;
    return j;
}

json wf_to_json(const WorkFactorReport& r) {
    return json{{"w1", r.w1},   {"w2", r.w2},   {"w", r.w},     {"log2w", r.log2w},
                {"p", r.p},     {"n_a", r.n_a}, {"n_b", r.n_b}, {"k_b", r.k_b},
                {"t_b", r.t_b}, {"k_gc", r.k_gc}, {"n_c", r.n_c}, {"n_w", r.n_w},
                {"tau", r.tau}};
}

json stats_to_json(const DecodeStats& s) {
    return json{{"p_c", s.p_c},   {"p_w", s.p_w},   {"p_f", s.p_f},
                {"se_c", s.se_c}, {"se_w", s.se_w}, {"se_f", s.se_f},
                {"trials", s.trials}, {"codes", s.codes}};
}

// built-in desk-scale demonstration specs
GcSpec demo_spec(const std::string& kind) {
    auto f2 = make_tower(2, 1);
    auto mk = [&](const std::vector<Vec>& rows) { return FMatrix::from_rows(f2, rows); };
    auto parity_code = [&](FieldPtr f, std::size_t n) {
        std::vector<Vec> rows;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            Vec r(n, 0);
            r[i] = 1;
            r[n - 1] = f->neg(1);
            rows.push_back(r);
        }
        return LinearCode(FMatrix::from_rows(f, rows), "parity");
    };
    if (kind == "rm8") {
        LinearCode inner(FMatrix::identity(f2, 2), "full");
        PartitionTree tree({FMatrix::identity(f2, 2), mk({{1, 1}})});
        LinearCode rep(mk({{1, 1, 1, 1}}), "repetition");
        return build_gcc(inner, tree, {rep, parity_code(f2, 4)});
    }
    if (kind == "parity-gc") {
        auto f4 = make_tower(2, 2);
        LinearCode inner = parity_code(f2, 4);
        PartitionTree tree({inner.generator(), mk({{1, 1, 0, 0}, {0, 0, 1, 1}})});
        return build_gcc(inner, tree, {parity_code(f2, 5), parity_code(f4, 5)});
    }
    if (kind == "occ-rs") {
        auto f8 = make_tower(2, 3);
        LinearCode inner = parity_code(f2, 4);
        PartitionTree tree({inner.generator()});
        return build_gcc(inner, tree, {rs_code(7, 3, f8)});
    }
    throw Error("unknown demo spec kind '" + kind + "' (rm8, parity-gc, occ-rs)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"McEliece over concatenated codes: keys, attacks, work factors"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "64-bit seed; every run logs its effective seed");
    app.add_option("--workers", g.workers, "worker threads for Monte Carlo harnesses");
    app.add_flag("--pretty", g.pretty, "indent JSON output");

    // ---- keygen
    auto* c_keygen = app.add_subcommand("keygen", "generate a key pair for a GC spec");
    c_keygen->fallthrough();
    std::string kg_spec, kg_pub = "mce.pub", kg_priv = "mce.priv";
    std::size_t kg_t = 1;
    bool kg_identity = false;
    c_keygen->add_option("--spec", kg_spec, "GC spec file")->required();
    c_keygen->add_option("--t", kg_t, "error budget")->required();
    c_keygen->add_option("--out-pub", kg_pub, "public key output path");
    c_keygen->add_option("--out-priv", kg_priv, "private key output path");
    c_keygen->add_flag("--debug-identity", kg_identity, "use S = P = I (testing only)");

    // ---- encrypt
    auto* c_encrypt = app.add_subcommand("encrypt", "encrypt a message block");
    c_encrypt->fallthrough();
    std::string en_pub, en_msg, en_out = "ct.txt";
    bool en_le = false;
    c_encrypt->add_option("--pub", en_pub, "public key file")->required();
    c_encrypt->add_option("--msg", en_msg, "message as hex (canonical integer)")->required();
    c_encrypt->add_option("--out", en_out, "cryptogram output path");
    c_encrypt->add_flag("--weight-le", en_le, "sample error weight uniformly <= t instead of = t");

    // ---- decrypt
    auto* c_decrypt = app.add_subcommand("decrypt", "decrypt a cryptogram");
    c_decrypt->fallthrough();
    std::string de_priv, de_ct;
    c_decrypt->add_option("--priv", de_priv, "private key file")->required();
    c_decrypt->add_option("--ct", de_ct, "cryptogram file")->required();

    // ---- attack
    auto* c_attack = app.add_subcommand("attack", "run an attack");
    c_attack->fallthrough();
    c_attack->require_subcommand(1);
    std::string at_pub, at_ct, at_partition, at_alignment, at_out;
    std::size_t at_delta = 0, at_tau = 0, at_bound = 0, at_na = 0, at_nb = 0, at_dgc = 0;
    std::uint64_t at_max_iters = 100000;
    bool at_allow_ambiguous = false;

    auto* a_isd = c_attack->add_subcommand("isd", "plain information set decoding");
    a_isd->fallthrough();
    a_isd->add_option("--pub", at_pub)->required();
    a_isd->add_option("--ct", at_ct)->required();
    a_isd->add_option("--delta", at_delta, "coordinates per draw (default k)");
    a_isd->add_option("--max-iters", at_max_iters);

    auto* a_step1 = c_attack->add_subcommand("step1", "recover the inner block partition");
    a_step1->fallthrough();
    a_step1->add_option("--pub", at_pub)->required();
    a_step1->add_option("--na", at_na, "number of inner blocks")->required();
    a_step1->add_option("--nb", at_nb, "inner block length")->required();
    a_step1->add_option("--bound", at_bound, "dual weight bound (default: auto search)");
    a_step1->add_option("--out", at_out, "partition JSON output path");

    auto* a_step2 = c_attack->add_subcommand("step2", "align blocks by signatures");
    a_step2->fallthrough();
    a_step2->add_option("--pub", at_pub)->required();
    a_step2->add_option("--partition", at_partition)->required();
    a_step2->add_flag("--allow-ambiguous", at_allow_ambiguous);

    auto* a_step31 = c_attack->add_subcommand("step31", "extract the inner code via RREF");
    a_step31->fallthrough();
    a_step31->add_option("--pub", at_pub)->required();
    a_step31->add_option("--partition", at_partition)->required();
    a_step31->add_option("--alignment", at_alignment, "step2 JSON output (default: identity)");
    a_step31->add_option("--out", at_out, "recovered code output path");

    auto* a_blocks = c_attack->add_subcommand("blocks", "per-block generator extraction");
    a_blocks->fallthrough();
    a_blocks->add_option("--pub", at_pub)->required();
    a_blocks->add_option("--partition", at_partition)->required();

    auto* a_nonstruct = c_attack->add_subcommand("nonstruct", "message recovery attack");
    a_nonstruct->fallthrough();
    a_nonstruct->add_option("--pub", at_pub)->required();
    a_nonstruct->add_option("--ct", at_ct)->required();
    a_nonstruct->add_option("--na", at_na)->required();
    a_nonstruct->add_option("--nb", at_nb)->required();
    a_nonstruct->add_option("--bound", at_bound, "step-1 weight bound (default: auto)");
    a_nonstruct->add_option("--tau", at_tau, "blocks per draw (default ceil(k/k_B))");
    a_nonstruct->add_option("--dgc", at_dgc, "distance bound for the exit guard (default: t)");
    a_nonstruct->add_option("--max-iters", at_max_iters);

    // ---- simulate
    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo decoder statistics");
    c_sim->fallthrough();
    gf_t sim_q = 2;
    std::size_t sim_nb = 16, sim_kb = 7, sim_d = 5, sim_codes = 100, sim_weight = 0;
    std::uint64_t sim_trials = 10000, sim_num = 212, sim_den = 2048;
    bool sim_fixed = false;
    c_sim->add_option("--q", sim_q, "symbol field size");
    c_sim->add_option("--nb", sim_nb, "inner code length");
    c_sim->add_option("--kb", sim_kb, "inner code dimension");
    c_sim->add_option("--d", sim_d, "required minimum distance");
    c_sim->add_option("--trials", sim_trials, "trials per code");
    c_sim->add_option("--codes", sim_codes, "number of sampled codes");
    c_sim->add_option("--error-num", sim_num, "per-symbol error probability numerator");
    c_sim->add_option("--error-den", sim_den, "per-symbol error probability denominator");
    c_sim->add_option("--error-weight", sim_weight, "fixed error weight (with --fixed-weight)");
    c_sim->add_flag("--fixed-weight", sim_fixed, "use the fixed-weight error model");

    // ---- workfactor
    auto* c_wf = app.add_subcommand("workfactor", "closed-form attack work factors");
    c_wf->fallthrough();
    std::string wf_preset, wf_custom, wf_isd;
    std::uint64_t wf_trials = 0;
    std::size_t wf_codes = 0;
    c_wf->add_option("--preset", wf_preset, "named preset: appendix-b");
    c_wf->add_option("--custom", wf_custom, "nA,nB,kB,tB,kGC,nc,nw,tau");
    c_wf->add_option("--isd", wf_isd, "n,k,t,delta");
    c_wf->add_option("--trials", wf_trials, "also simulate: trials per code");
    c_wf->add_option("--codes", wf_codes, "also simulate: number of codes");

    // ---- spec-check
    auto* c_check = app.add_subcommand("spec-check", "structural security advisory for a spec");
    c_check->fallthrough();
    std::string ck_spec;
    c_check->add_option("--spec", ck_spec, "GC spec file")->required();

    // ---- demo-spec
    auto* c_demo = app.add_subcommand("demo-spec", "write a built-in desk-scale spec");
    c_demo->fallthrough();
    std::string dm_kind = "rm8", dm_out = "demo.gcspec";
    c_demo->add_option("--kind", dm_kind, "rm8 | parity-gc | occ-rs");
    c_demo->add_option("--out", dm_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }

    try {
        if (*c_keygen) {
            GcSpec spec = load_gcspec(kg_spec);
            auto kp = keygen(std::move(spec), kg_t, g.seed, kg_identity);
            {
                std::ofstream f(kg_pub);
                write_public_key(f, kp.pub);
            }
            {
                std::ofstream f(kg_priv);
                write_private_key(f, kp.priv, kg_spec);
            }
            emit(json{{"seed", g.seed},
                      {"n", kp.pub.g_pub.cols()},
                      {"k", kp.pub.g_pub.rows()},
                      {"t", kp.pub.t},
                      {"public_key", kg_pub},
                      {"private_key", kg_priv}},
                 g);
        } else if (*c_encrypt) {
            PublicKey pub = load_public(en_pub);
            Vec m = message_from_hex(*pub.g_pub.field(), pub.g_pub.rows(), en_msg);
            Vec r = encrypt(pub, m, g.seed, !en_le);
            {
                std::ofstream f(en_out);
                write_cryptogram(f, *pub.g_pub.field(), r);
            }
            emit(json{{"seed", g.seed}, {"n", r.size()}, {"cryptogram", en_out}}, g);
        } else if (*c_decrypt) {
            PrivateKey priv = load_private_key(de_priv);
            auto [field, r] = load_ct(de_ct);
            Vec m = decrypt(priv, r);
            emit(json{{"seed", g.seed}, {"message_hex", message_to_hex(*field, m)}}, g);
        } else if (*a_isd) {
            PublicKey pub = load_public(at_pub);
            auto [field, r] = load_ct(at_ct);
            std::size_t delta = at_delta ? at_delta : pub.g_pub.rows();
            auto res = isd_attack(pub.g_pub, r, pub.t, delta, at_max_iters, g.seed);
            emit(json{{"seed", g.seed},
                      {"message_hex", message_to_hex(*field, res.message)},
                      {"iterations", res.iterations},
                      {"delta_used", res.delta_used}},
                 g);
        } else if (*a_step1) {
            PublicKey pub = load_public(at_pub);
            BlockPartition part = at_bound ? sendrier_step1(pub.g_pub, at_na, at_nb, at_bound)
                                           : sendrier_step1_auto(pub.g_pub, at_na, at_nb);
            json out = partition_to_json(part);
            out["seed"] = g.seed;
            if (!at_out.empty()) {
                std::ofstream f(at_out);
                f << partition_to_json(part).dump(2) << '\n';
                out["partition_file"] = at_out;
            }
            emit(out, g);
        } else if (*a_step2) {
            PublicKey pub = load_public(at_pub);
            BlockPartition part = load_partition(at_partition);
            auto res = sendrier_step2(pub.g_pub, part, at_allow_ambiguous);
            emit(json{{"seed", g.seed},
                      {"alignments", res.alignments},
                      {"multiplicity", res.multiplicity}},
                 g);
        } else if (*a_step31) {
            PublicKey pub = load_public(at_pub);
            BlockPartition part = load_partition(at_partition);
            Step2Result align;
            if (!at_alignment.empty()) {
                std::ifstream f(at_alignment);
                if (!f) throw ParseError("cannot open " + at_alignment);
                json j = json::parse(f);
                align.alignments =
                    j.at("alignments").get<std::vector<std::vector<std::size_t>>>();
                align.multiplicity = j.value("multiplicity", 1);
            } else {
                for (std::size_t b = 0; b < part.n_a(); ++b) {
                    std::vector<std::size_t> ident(part.n_b());
                    for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = i;
                    align.alignments.push_back(std::move(ident));
                }
            }
            LinearCode rec = sendrier_step3_1(apply_alignment(pub.g_pub, part, align),
                                              part.n_b());
            json out{{"seed", g.seed}, {"n_b", rec.n()}, {"k_b", rec.k()}};
            if (!at_out.empty()) {
                std::ofstream f(at_out);
                write_code(f, rec);
                out["code_file"] = at_out;
            } else {
                std::ostringstream ss;
                write_code(ss, rec);
                out["code"] = ss.str();
            }
            emit(out, g);
        } else if (*a_blocks) {
            PublicKey pub = load_public(at_pub);
            BlockPartition part = load_partition(at_partition);
            auto codes = block_generators(pub.g_pub, part);
            json arr = json::array();
            for (const auto& c : codes) {
                std::ostringstream ss;
                write_code(ss, c);
                arr.push_back(json{{"k", c.k()}, {"code", ss.str()}});
            }
            emit(json{{"seed", g.seed}, {"blocks", arr}}, g);
        } else if (*a_nonstruct) {
            PublicKey pub = load_public(at_pub);
            auto [field, r] = load_ct(at_ct);
            BlockPartition part = at_bound
                                      ? sendrier_step1(pub.g_pub, at_na, at_nb, at_bound)
                                      : sendrier_step1_auto(pub.g_pub, at_na, at_nb);
            auto codes = block_generators(pub.g_pub, part);
            std::optional<std::size_t> dgc;
            if (at_dgc) dgc = at_dgc;
            auto rep = nonstructural_attack(pub.g_pub, r, pub.t, part, codes, at_tau,
                                            at_max_iters, g.seed, dgc);
            json out{{"seed", g.seed},
                     {"iterations", rep.iterations},
                     {"tau_used", rep.tau_used},
                     {"n_decoded", rep.n_decoded},
                     {"n_failed", rep.n_failed},
                     {"accept_distance", rep.accept_distance},
                     {"elapsed_seconds", rep.elapsed_seconds}};
            if (rep.message) out["message_hex"] = message_to_hex(*field, *rep.message);
            emit(out, g);
        } else if (*c_sim) {
            ErrorModel model = sim_fixed ? ErrorModel::fixed_weight(sim_weight)
                                         : ErrorModel::bernoulli(sim_num, sim_den);
            auto stats = montecarlo_decode_stats(sim_q, sim_nb, sim_kb, sim_d, model,
                                                 sim_trials, sim_codes, g.seed, g.workers);
            json out = stats_to_json(stats);
            out["seed"] = g.seed;
            emit(out, g);
        } else if (*c_wf) {
            json out{{"seed", g.seed}};
            if (wf_preset == "appendix-b") {
                auto rep = appendix_b_report(g.seed, wf_trials, wf_codes, g.workers);
                out["closed_form"] = wf_to_json(rep.closed_form);
                if (rep.stats) out["simulation"] = stats_to_json(*rep.stats);
                if (rep.measured) out["measured"] = wf_to_json(*rep.measured);
            } else if (!wf_custom.empty()) {
                std::size_t v[8];
                std::istringstream ss(wf_custom);
                std::string tok;
                for (int i = 0; i < 8; ++i) {
                    if (!std::getline(ss, tok, ',')) throw ParseError("--custom needs 8 values");
                    v[i] = std::stoull(tok);
                }
                out["closed_form"] =
                    wf_to_json(nonstructural_workfactor(v[0], v[1], v[2], v[3], v[4], v[5],
                                                        v[6], v[7]));
            } else if (!wf_isd.empty()) {
                std::size_t v[4];
                std::istringstream ss(wf_isd);
                std::string tok;
                for (int i = 0; i < 4; ++i) {
                    if (!std::getline(ss, tok, ',')) throw ParseError("--isd needs 4 values");
                    v[i] = std::stoull(tok);
                }
                auto wf = isd_workfactor(v[0], v[1], v[2], v[3]);
                out["isd"] = json{{"w", wf.w}, {"log2w", wf.log2w}};
            } else {
                throw Error("workfactor needs --preset, --custom or --isd");
            }
            emit(out, g);
        } else if (*c_check) {
            GcSpec spec = load_gcspec(ck_spec);
            json out{{"seed", g.seed},
                     {"n", spec.n_gc()},
                     {"k", spec.k_gc()},
                     {"ell", spec.ell()},
                     {"decoder_bound", spec.min_distance_bound()}};
            try {
                out["occ_equivalent"] = occ_equivalence_check(spec);
            } catch (const NotApplicable&) {
                out["occ_equivalent"] = "not-applicable";
            }
            auto xi = xi_emptiness_check(spec);
            out["xi_empty_guaranteed"] = xi.xi_empty_guaranteed;
            out["step1_weight_bound"] = xi.threshold;
            if (spec.per_block())
                out["block_signatures_distinct"] = spec.block_signatures_pairwise_distinct();
            std::string advisory;
            if (xi.xi_empty_guaranteed) {
                advisory =
                    "low-weight dual set provably empty; structural block recovery "
                    "(step 1) is not guaranteed to work";
            } else {
                advisory =
                    "low-weight dual words may exist below bound " +
                    std::to_string(xi.threshold) + "; block recovery may proceed";
            }
            if (out["occ_equivalent"] == json(true))
                advisory += "; all outer codes coincide, the code is an ordinary "
                            "concatenation and inherits its structural attacks";
            out["advisory"] = advisory;
            emit(out, g);
        } else if (*c_demo) {
            GcSpec spec = demo_spec(dm_kind);
            std::ofstream f(dm_out);
            write_gcspec(f, spec);
            emit(json{{"seed", g.seed},
                      {"kind", dm_kind},
                      {"spec", dm_out},
                      {"n", spec.n_gc()},
                      {"k", spec.k_gc()},
                      {"decoder_bound", spec.min_distance_bound()}},
                 g);
        }
    } catch (const Error& e) {
        emit(json{{"error", e.what()}}, g);
        return 1;
    } catch (const std::exception& e) {
        emit(json{{"error", e.what()}}, g);
        return 1;
    }
    return 0;
}
