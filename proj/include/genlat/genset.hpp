#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "genlat/util.hpp"

namespace genlat {

// Set of generator indices (0-based). One inline word covers n <= 64; wider
// sets spill into a heap vector so nothing in the API depends on n.
class GenSet {
 public:
  GenSet() = default;

  static GenSet singleton(int i) {
    GenSet s;
    s.set(i);
    return s;
  }
  static GenSet full(int n) {
    GenSet s;
    for (int i = 0; i < n; ++i) s.set(i);
    return s;
  }
  static GenSet from_indices(const std::vector<int>& idx) {
    GenSet s;
    for (int i : idx) s.set(i);
    return s;
  }

  void set(int i) { word(i / 64) |= (1ULL << (i % 64)); }
  void reset(int i) {
    if (i / 64 < width()) word_at(i / 64) &= ~(1ULL << (i % 64));
    trim();
  }
  bool test(int i) const {
    int w = i / 64;
    if (w >= width()) return false;
    return (word_val(w) >> (i % 64)) & 1;
  }

  int count() const {
    int c = __builtin_popcountll(head_);
    for (std::uint64_t w : tail_) c += __builtin_popcountll(w);
    return c;
  }
  bool empty() const { return head_ == 0 && tail_.empty(); }

  bool is_subset_of(const GenSet& o) const {
    if (head_ & ~o.head_) return false;
    for (std::size_t i = 0; i < tail_.size(); ++i) {
      std::uint64_t ow = (i < o.tail_.size()) ? o.tail_[i] : 0;
      if (tail_[i] & ~ow) return false;
    }
    return true;
  }

  friend GenSet operator|(const GenSet& a, const GenSet& b) {
    GenSet r = a;
    r.head_ |= b.head_;
    if (b.tail_.size() > r.tail_.size()) r.tail_.resize(b.tail_.size(), 0);
    for (std::size_t i = 0; i < b.tail_.size(); ++i) r.tail_[i] |= b.tail_[i];
    return r;
  }
  friend GenSet operator&(const GenSet& a, const GenSet& b) {
    GenSet r;
    r.head_ = a.head_ & b.head_;
    std::size_t m = std::min(a.tail_.size(), b.tail_.size());
    r.tail_.reserve(m);
    for (std::size_t i = 0; i < m; ++i) r.tail_.push_back(a.tail_[i] & b.tail_[i]);
    r.trim();
    return r;
  }
  // Set difference.
  friend GenSet operator-(const GenSet& a, const GenSet& b) {
    GenSet r = a;
    r.head_ &= ~b.head_;
    std::size_t m = std::min(r.tail_.size(), b.tail_.size());
    for (std::size_t i = 0; i < m; ++i) r.tail_[i] &= ~b.tail_[i];
    r.trim();
    return r;
  }

  friend bool operator==(const GenSet& a, const GenSet& b) {
    return a.head_ == b.head_ && a.tail_ == b.tail_;
  }
  friend bool operator!=(const GenSet& a, const GenSet& b) { return !(a == b); }

  // Canonical order: by cardinality, then by smallest differing index (the set
  // containing it comes first). Gives stable, rank-compatible element ids.
  static bool canonical_less(const GenSet& a, const GenSet& b) {
    int ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    int w = std::max(a.width(), b.width());
    for (int i = 0; i < w; ++i) {
      std::uint64_t wa = a.word_val(i), wb = b.word_val(i);
      if (wa != wb) {
        std::uint64_t diff = wa ^ wb;
        std::uint64_t low = diff & (~diff + 1);
        return (wa & low) != 0;
      }
    }
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    std::uint64_t w = head_;
    int base = 0;
    while (true) {
      while (w) {
        int b = __builtin_ctzll(w);
        f(base + b);
        w &= w - 1;
      }
      int next = base / 64;
      if (static_cast<std::size_t>(next) >= tail_.size()) break;
      w = tail_[next];
      base += 64;
    }
  }

  std::vector<int> indices() const {
    std::vector<int> v;
    for_each([&](int i) { v.push_back(i); });
    return v;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<std::uint64_t>{}(head_);
    for (std::uint64_t w : tail_) hash_mix(h, std::hash<std::uint64_t>{}(w));
    return h;
  }

  // 1-based display, e.g. "{1,3}"; "{}" for the empty set.
  std::string str() const {
    std::string s = "{";
    bool first = true;
    for_each([&](int i) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    });
    s += "}";
    return s;
  }

 private:
  int width() const { return 1 + static_cast<int>(tail_.size()); }
  std::uint64_t word_val(int w) const {
    if (w == 0) return head_;
    std::size_t i = static_cast<std::size_t>(w - 1);
    return i < tail_.size() ? tail_[i] : 0;
  }
  std::uint64_t& word(int w) {
    if (w == 0) return head_;
    if (static_cast<std::size_t>(w) > tail_.size()) tail_.resize(w, 0);
    return tail_[w - 1];
  }
  std::uint64_t& word_at(int w) { return w == 0 ? head_ : tail_[w - 1]; }
  void trim() {
    while (!tail_.empty() && tail_.back() == 0) tail_.pop_back();
  }

  std::uint64_t head_ = 0;
  std::vector<std::uint64_t> tail_;
};

struct GenSetHash {
  std::size_t operator()(const GenSet& s) const { return s.hash(); }
};

}  // namespace genlat
