#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace shiftlab {

// Dynamic bitset used for vertex subsets and edge subsets throughout the
// subset constructions. Sets of different universe sizes never compare equal.
class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(std::size_t size, bool value = false);

  static BitSet singleton(std::size_t size, std::size_t index);

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  bool any() const;
  bool none() const { return !any(); }
  std::size_t count() const;
  // Index of the lowest set bit, or size() if empty.
  std::size_t first() const;

  bool is_subset_of(const BitSet& other) const;
  bool intersects(const BitSet& other) const;

  BitSet& operator|=(const BitSet& other);
  BitSet& operator&=(const BitSet& other);

  friend BitSet operator|(BitSet a, const BitSet& b) { return a |= b; }
  friend BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }

  bool operator==(const BitSet& other) const {
    return size_ == other.size_ && words_ == other.words_;
  }
  bool operator!=(const BitSet& other) const { return !(*this == other); }
  // Total order for deterministic containers: by size, then by storage words.
  bool operator<(const BitSet& other) const;

  std::size_t hash() const;

  std::vector<std::size_t> indices() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        f(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitSetHash {
  std::size_t operator()(const BitSet& s) const { return s.hash(); }
};

inline std::size_t hash_combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

// Binary relation on {0..n-1}, stored row-major in an n*n bitset.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), bits_(n * n) {}

  static Relation identity(std::size_t n);

  std::size_t universe() const { return n_; }
  bool test(std::size_t a, std::size_t b) const { return bits_.test(a * n_ + b); }
  void set(std::size_t a, std::size_t b) { bits_.set(a * n_ + b); }
  bool empty() const { return bits_.none(); }

  // (this ; other): pairs (a, c) with (a, b) in this and (b, c) in other.
  Relation then(const Relation& other) const;
  // Image of a set under the relation.
  BitSet image(const BitSet& from) const;
  // Elements with at least one successor / predecessor.
  BitSet domain() const;
  BitSet range() const;

  bool operator==(const Relation& other) const {
    return n_ == other.n_ && bits_ == other.bits_;
  }
  bool operator<(const Relation& other) const {
    return n_ != other.n_ ? n_ < other.n_ : bits_ < other.bits_;
  }
  std::size_t hash() const { return bits_.hash(); }

 private:
  std::size_t n_ = 0;
  BitSet bits_;
};

}  // namespace shiftlab

template <>
struct std::hash<shiftlab::BitSet> {
  std::size_t operator()(const shiftlab::BitSet& s) const { return s.hash(); }
};
template <>
struct std::hash<shiftlab::Relation> {
  std::size_t operator()(const shiftlab::Relation& r) const { return r.hash(); }
};
