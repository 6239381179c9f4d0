#include "gcmce/io.hpp"

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gcmce/errors.hpp"

namespace gcmce {

namespace {

void expect_token(std::istream& is, const std::string& want) {
    std::string got;
    if (!(is >> got) || got != want)
        throw ParseError("expected '" + want + "', got '" + got + "'");
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    return f;
}

}  // namespace

void write_code(std::ostream& os, const LinearCode& code) {
    os << "code " << code.family() << '\n';
    write_matrix(os, code.generator());
}

LinearCode read_code(std::istream& is) {
    expect_token(is, "code");
    std::string family;
    is >> family;
    return LinearCode(read_matrix(is), family);
}

PartitionTree tree_from_theta(const FMatrix& theta, const std::vector<std::size_t>& level_dims) {
    return PartitionTree(theta, level_dims);
}

void write_gcspec(std::ostream& os, const GcSpec& spec) {
    os << "gcspec v1\n";
    os << "q " << spec.q() << '\n';
    os << "nB " << spec.n_b() << '\n';
    os << "ell " << spec.ell() << '\n';
    for (std::size_t i = 0; i < spec.ell(); ++i) {
        os << "level " << (i + 1) << '\n';
        os << "k " << spec.level_dim(i) << '\n';
        os << "outer\n";
        write_matrix(os, spec.outer(i).generator());
    }
    os << "inner\n";
    write_matrix(os, spec.inner(0).generator());
    os << "theta\n";
    write_matrix(os, spec.theta(0));
    if (spec.per_block()) {
        os << "blocks " << spec.n_a() << '\n';
        for (std::size_t b = 0; b < spec.n_a(); ++b) {
            os << "block " << b << '\n';
            write_matrix(os, spec.theta(b));
        }
    }
}

GcSpec read_gcspec(std::istream& is) {
    expect_token(is, "gcspec");
    expect_token(is, "v1");
    expect_token(is, "q");
    gf_t q;
    is >> q;
    expect_token(is, "nB");
    std::size_t nb;
    is >> nb;
    expect_token(is, "ell");
    std::size_t ell;
    is >> ell;
    if (!is) throw ParseError("bad gcspec header");

    std::vector<std::size_t> dims(ell);
    std::vector<LinearCode> outers;
    for (std::size_t i = 0; i < ell; ++i) {
        expect_token(is, "level");
        std::size_t idx;
        is >> idx;
        if (idx != i + 1) throw ParseError("levels out of order");
        expect_token(is, "k");
        is >> dims[i];
        expect_token(is, "outer");
        outers.emplace_back(read_matrix(is));
    }
    expect_token(is, "inner");
    FMatrix inner_gen = read_matrix(is);
    expect_token(is, "theta");
    FMatrix theta = read_matrix(is);
    if (inner_gen.cols() != nb || theta.cols() != nb)
        throw ParseError("inner/theta width differs from nB");

    PartitionTree tree(theta, dims);
    GcSpec base(LinearCode(inner_gen), std::move(tree), std::move(outers));

    std::string tok;
    if (is >> tok) {
        if (tok != "blocks") throw ParseError("unexpected trailing token '" + tok + "'");
        std::size_t count;
        is >> count;
        std::vector<PartitionTree> trees;
        trees.reserve(count);
        for (std::size_t b = 0; b < count; ++b) {
            expect_token(is, "block");
            std::size_t idx;
            is >> idx;
            if (idx != b) throw ParseError("blocks out of order");
            trees.emplace_back(read_matrix(is), dims);
        }
        return build_justesen_variant(base, std::move(trees));
    }
    return base;
}

GcSpec load_gcspec(const std::string& path) {
    auto f = open_or_throw(path);
    return read_gcspec(f);
}

void write_public_key(std::ostream& os, const PublicKey& pub) {
    os << "mceliece-public v1\n";
    os << "t " << pub.t << '\n';
    os << "gtilde\n";
    write_matrix(os, pub.g_pub);
}

PublicKey read_public_key(std::istream& is) {
    expect_token(is, "mceliece-public");
    expect_token(is, "v1");
    expect_token(is, "t");
    std::size_t t;
    is >> t;
    expect_token(is, "gtilde");
    return PublicKey{read_matrix(is), t};
}

void write_private_key(std::ostream& os, const PrivateKey& priv, const std::string& spec_path) {
    os << "mceliece-private v1\n";
    os << "spec " << spec_path << '\n';
    os << "s\n";
    write_matrix(os, priv.s);
    os << "perm\n";
    os << priv.p.size() << '\n';
    for (std::size_t i = 0; i < priv.p.size(); ++i) {
        if (i) os << ' ';
        os << priv.p(i);
    }
    os << '\n';
}

PrivateKeyFile read_private_key(std::istream& is) {
    expect_token(is, "mceliece-private");
    expect_token(is, "v1");
    expect_token(is, "spec");
    PrivateKeyFile out;
    is >> out.spec_path;
    expect_token(is, "s");
    out.s = read_matrix(is);
    expect_token(is, "perm");
    std::size_t n;
    is >> n;
    out.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!(is >> out.perm[i])) throw ParseError("truncated permutation");
    return out;
}

PrivateKey load_private_key(const std::string& key_path) {
    auto f = open_or_throw(key_path);
    PrivateKeyFile pkf = read_private_key(f);
    std::filesystem::path spec_path(pkf.spec_path);
    if (!std::filesystem::exists(spec_path)) {
        auto sibling = std::filesystem::path(key_path).parent_path() / spec_path;
        if (std::filesystem::exists(sibling)) spec_path = sibling;
    }
    GcSpec spec = load_gcspec(spec_path.string());
    FMatrix s = pkf.s;
    auto s_inv = s.inverse();
    if (!s_inv) throw ParseError("private key matrix S is singular");
    return PrivateKey{std::move(s), std::move(*s_inv), PermMatrix(pkf.perm), std::move(spec)};
}

void write_cryptogram(std::ostream& os, const FieldTower& f, const Vec& r) {
    os << "cryptogram v1\n";
    os << r.size() << ' ' << f.q() << ' ' << f.m() << '\n';
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) os << ' ';
        os << r[i];
    }
    os << '\n';
}

std::pair<FieldPtr, Vec> read_cryptogram(std::istream& is) {
    expect_token(is, "cryptogram");
    expect_token(is, "v1");
    std::size_t n;
    gf_t q;
    unsigned m;
    if (!(is >> n >> q >> m)) throw ParseError("bad cryptogram header");
    FieldPtr f = make_tower(q, m);
    Vec r(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t v;
        if (!(is >> v)) throw ParseError("truncated cryptogram");
        if (v >= f->order()) throw ParseError("cryptogram symbol out of range");
        r[i] = static_cast<gf_t>(v);
    }
    return {f, r};
}

std::string message_to_hex(const FieldTower& f, const Vec& m) {
    const std::uint64_t base = f.order();
    Vec digits = m;  // base-`order` little endian
    std::string hex;
    auto nonzero = [&] {
        for (gf_t d : digits)
            if (d) return true;
        return false;
    };
    while (nonzero()) {
        std::uint64_t rem = 0;
        for (std::size_t i = digits.size(); i > 0; --i) {
            std::uint64_t cur = rem * base + digits[i - 1];
            digits[i - 1] = static_cast<gf_t>(cur / 16);
            rem = cur % 16;
        }
        hex.push_back("0123456789abcdef"[rem]);
    }
    if (hex.empty()) hex = "0";
    return std::string(hex.rbegin(), hex.rend());
}

Vec message_from_hex(const FieldTower& f, std::size_t k, const std::string& hex) {
    const std::uint64_t base = f.order();
    Vec digits(k, 0);
    for (char c : hex) {
        int d;
        if (c >= '0' && c <= '9')
            d = c - '0';
        else if (c >= 'a' && c <= 'f')
            d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            d = c - 'A' + 10;
        else
            throw ParseError("invalid hex digit in message");
        std::uint64_t carry = static_cast<std::uint64_t>(d);
        for (std::size_t i = 0; i < k; ++i) {
            std::uint64_t cur = static_cast<std::uint64_t>(digits[i]) * 16 + carry;
            digits[i] = static_cast<gf_t>(cur % base);
            carry = cur / base;
        }
        if (carry != 0) throw ParseError("message value exceeds q^k");
    }
    return digits;
}

}  // namespace gcmce
