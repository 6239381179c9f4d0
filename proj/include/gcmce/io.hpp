#ifndef GCMCE_IO_HPP
#define GCMCE_IO_HPP

#include <iosfwd>
#include <string>
#include <utility>

#include "gcmce/mceliece.hpp"

namespace gcmce {

// Code file: a header line naming the family, then the generator matrix in
// the standard text format.
void write_code(std::ostream& os, const LinearCode& code);
LinearCode read_code(std::istream& is);

// GC spec file: q, n_B, ell, per-level (k^(i), outer generator), inner
// generator, theta matrix; optional per-block theta sections.
void write_gcspec(std::ostream& os, const GcSpec& spec);
GcSpec read_gcspec(std::istream& is);
GcSpec load_gcspec(const std::string& path);

void write_public_key(std::ostream& os, const PublicKey& pub);
PublicKey read_public_key(std::istream& is);

struct PrivateKeyFile {
    FMatrix s;
    std::vector<std::uint32_t> perm;
    std::string spec_path;
};

void write_private_key(std::ostream& os, const PrivateKey& priv, const std::string& spec_path);
PrivateKeyFile read_private_key(std::istream& is);
// Resolves the referenced spec (relative to the key file's directory when
// needed) and rebuilds the full private key.
PrivateKey load_private_key(const std::string& key_path);

void write_cryptogram(std::ostream& os, const FieldTower& f, const Vec& r);
std::pair<FieldPtr, Vec> read_cryptogram(std::istream& is);

// Message of length k over the field, encoded as the hex digits of the
// canonical integer sum m_i * q^i (most significant first, lowercase).
std::string message_to_hex(const FieldTower& f, const Vec& m);
Vec message_from_hex(const FieldTower& f, std::size_t k, const std::string& hex);

// Partition tree from an explicit theta matrix: the level-i rows are taken
// as the coset representative basis, so encode/decode match the file bit
// for bit.
PartitionTree tree_from_theta(const FMatrix& theta, const std::vector<std::size_t>& level_dims);

}  // namespace gcmce

#endif
