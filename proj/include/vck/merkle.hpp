#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vck/bytes.hpp"
#include "vck/error.hpp"
#include "vck/hash.hpp"

namespace vck {

inline Digest merkle_leaf_hash(std::span<const std::uint8_t> leaf) {
  return Hasher().update_u8(0x00).update(leaf).finish();
}

inline Digest merkle_node_hash(const Digest& left, const Digest& right) {
  return Hasher().update_u8(0x01).update(left).update(right).finish();
}

// Authentication path for one leaf; siblings ordered leaf to root.
struct AuthPath {
  std::uint32_t leaf_index = 0;
  std::vector<Digest> siblings;

  // 4-byte index || 1-byte length || siblings.
  void write(ByteWriter& w) const {
    w.u32(leaf_index);
    w.u8(static_cast<std::uint8_t>(siblings.size()));
    for (const Digest& d : siblings) write_digest(w, d);
  }
  static AuthPath read(ByteReader& r) {
    AuthPath p;
    p.leaf_index = r.u32();
    std::uint8_t len = r.u8();
    p.siblings.reserve(len);
    for (int i = 0; i < len; ++i) p.siblings.push_back(read_digest(r));
    return p;
  }
  std::size_t encoded_size() const { return 5 + 32 * siblings.size(); }

  friend bool operator==(const AuthPath&, const AuthPath&) = default;
};

// Binary Merkle tree over byte-string leaves. The leaf count is padded to a
// power of two (at least two) by repeating the final leaf; leaves hash as
// H(0x00 || leaf) and internal nodes as H(0x01 || left || right).
class MerkleTree {
 public:
  static MerkleTree build(std::span<const Bytes> leaves) {
    if (leaves.empty()) throw UsageError("Merkle tree needs at least one leaf");
    std::vector<Digest> hashes;
    hashes.reserve(std::bit_ceil(std::max<std::size_t>(leaves.size(), 2)));
    for (const Bytes& leaf : leaves) hashes.push_back(merkle_leaf_hash(leaf));
    return from_leaf_hashes(std::move(hashes));
  }

  static MerkleTree from_leaf_hashes(std::vector<Digest> hashes) {
    if (hashes.empty()) throw UsageError("Merkle tree needs at least one leaf");
    MerkleTree t;
    t.leaf_count_ = hashes.size();
    const std::size_t padded = std::bit_ceil(std::max<std::size_t>(hashes.size(), 2));
    hashes.resize(padded, hashes.back());
    t.levels_.push_back(std::move(hashes));
    while (t.levels_.back().size() > 1) {
      const auto& prev = t.levels_.back();
      std::vector<Digest> next(prev.size() / 2);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] = merkle_node_hash(prev[2 * i], prev[2 * i + 1]);
      t.levels_.push_back(std::move(next));
    }
    return t;
  }

  const Digest& root() const { return levels_.back().front(); }
  std::size_t leaf_count() const { return leaf_count_; }
  std::size_t padded_leaf_count() const { return levels_.front().size(); }
  std::size_t height() const { return levels_.size() - 1; }
  const std::vector<std::vector<Digest>>& levels() const { return levels_; }

  AuthPath open(std::size_t index) const {
    if (index >= leaf_count_) throw UsageError("Merkle opening index out of range");
    AuthPath path;
    path.leaf_index = static_cast<std::uint32_t>(index);
    std::size_t pos = index;
    for (std::size_t level = 0; level + 1 < levels_.size(); ++level) {
      path.siblings.push_back(levels_[level][pos ^ 1]);
      pos >>= 1;
    }
    return path;
  }

 private:
  MerkleTree() = default;

  std::size_t leaf_count_ = 0;
  std::vector<std::vector<Digest>> levels_;
};

// Recomputes the root from the leaf and its siblings. The path must carry
// the same index and at least one sibling; an index that does not fit the
// path length is rejected.
inline bool verify_path(const Digest& root, std::size_t index, std::span<const std::uint8_t> leaf,
                        const AuthPath& path) {
  if (path.leaf_index != index || path.siblings.empty() || path.siblings.size() >= 64) return false;
  if ((index >> path.siblings.size()) != 0) return false;
  Digest cur = merkle_leaf_hash(leaf);
  std::size_t pos = index;
  for (const Digest& sibling : path.siblings) {
    cur = (pos & 1) ? merkle_node_hash(sibling, cur) : merkle_node_hash(cur, sibling);
    pos >>= 1;
  }
  return cur == root;
}

}  // namespace vck
