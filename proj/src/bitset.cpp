#include "shiftlab/bitset.hpp"

#include <algorithm>

namespace shiftlab {

BitSet::BitSet(std::size_t size, bool value)
    : size_(size), words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  if (value && size % 64 != 0) {
    words_.back() &= (std::uint64_t{1} << (size % 64)) - 1;
  }
}

BitSet BitSet::singleton(std::size_t size, std::size_t index) {
  BitSet s(size);
  s.set(index);
  return s;
}

bool BitSet::any() const {
  return std::any_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w != 0; });
}

std::size_t BitSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

std::size_t BitSet::first() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w]) return w * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[w]));
  }
  return size_;
}

bool BitSet::is_subset_of(const BitSet& other) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & ~other.words_[w]) return false;
  }
  return true;
}

bool BitSet::intersects(const BitSet& other) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & other.words_[w]) return true;
  }
  return false;
}

BitSet& BitSet::operator|=(const BitSet& other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

BitSet& BitSet::operator&=(const BitSet& other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

bool BitSet::operator<(const BitSet& other) const {
  if (size_ != other.size_) return size_ < other.size_;
  return words_ < other.words_;
}

std::size_t BitSet::hash() const {
  std::size_t h = size_;
  for (auto w : words_) h = hash_combine(h, std::hash<std::uint64_t>{}(w));
  return h;
}

std::vector<std::size_t> BitSet::indices() const {
  std::vector<std::size_t> out;
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

std::string BitSet::to_string() const {
  std::string s = "{";
  bool first_item = true;
  for_each([&](std::size_t i) {
    if (!first_item) s += ",";
    s += std::to_string(i);
    first_item = false;
  });
  return s + "}";
}

Relation Relation::identity(std::size_t n) {
  Relation r(n);
  for (std::size_t i = 0; i < n; ++i) r.set(i, i);
  return r;
}

Relation Relation::then(const Relation& other) const {
  Relation out(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      if (!test(a, b)) continue;
      for (std::size_t c = 0; c < n_; ++c) {
        if (other.test(b, c)) out.set(a, c);
      }
    }
  }
  return out;
}

BitSet Relation::image(const BitSet& from) const {
  BitSet out(n_);
  from.for_each([&](std::size_t a) {
    for (std::size_t b = 0; b < n_; ++b) {
      if (test(a, b)) out.set(b);
    }
  });
  return out;
}

BitSet Relation::domain() const {
  BitSet out(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      if (test(a, b)) {
        out.set(a);
        break;
      }
    }
  }
  return out;
}

BitSet Relation::range() const {
  BitSet out(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      if (test(a, b)) out.set(b);
    }
  }
  return out;
}

}  // namespace shiftlab
