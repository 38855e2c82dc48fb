#pragma once

// Internal tape + configuration-hash helpers shared by the two simulators.
// Not installed; nothing here appears in the public headers.

#include <cstdint>
#include <vector>

#include "omegalab/util.hpp"

namespace omegalab::detail {

// Unbounded two-way tape of small symbol values, 0 meaning blank.
// right[i] holds cell i, left[i] holds cell -1-i.
class Tape {
 public:
  uint8_t read(int64_t pos) const {
    if (pos >= 0) {
      auto i = static_cast<size_t>(pos);
      return i < right_.size() ? right_[i] : 0;
    }
    auto i = static_cast<size_t>(-1 - pos);
    return i < left_.size() ? left_[i] : 0;
  }

  void write(int64_t pos, uint8_t sym) {
    if (pos >= 0) {
      auto i = static_cast<size_t>(pos);
      if (i >= right_.size()) {
        if (sym == 0) return;
        right_.resize(i + 1, 0);
      }
      right_[i] = sym;
    } else {
      auto i = static_cast<size_t>(-1 - pos);
      if (i >= left_.size()) {
        if (sym == 0) return;
        left_.resize(i + 1, 0);
      }
      left_[i] = sym;
    }
  }

  void clear() {
    left_.clear();
    right_.clear();
  }

  // Outermost non-blank positions, or false if the tape is all blank.
  // Each bound prefers its own side: the span's low end is the outermost
  // left-side mark when one exists, otherwise the innermost right-side
  // mark, and symmetrically for the high end.
  bool span(int64_t& lo, int64_t& hi) const {
    bool has_left = false, has_right = false;
    size_t lmin = 0, lmax = 0, rmin = 0, rmax = 0;
    for (size_t i = left_.size(); i-- > 0;) {
      if (left_[i] != 0) {
        lmax = i;
        has_left = true;
        break;
      }
    }
    if (has_left) {
      for (size_t i = 0;; ++i) {
        if (left_[i] != 0) {
          lmin = i;
          break;
        }
      }
    }
    for (size_t i = right_.size(); i-- > 0;) {
      if (right_[i] != 0) {
        rmax = i;
        has_right = true;
        break;
      }
    }
    if (has_right) {
      for (size_t i = 0;; ++i) {
        if (right_[i] != 0) {
          rmin = i;
          break;
        }
      }
    }
    if (!has_left && !has_right) return false;
    lo = has_left ? -1 - static_cast<int64_t>(lmax) : static_cast<int64_t>(rmin);
    hi = has_right ? static_cast<int64_t>(rmax) : -1 - static_cast<int64_t>(lmin);
    return true;
  }

  bool operator==(const Tape& o) const {
    size_t lm = std::max(left_.size(), o.left_.size());
    for (size_t i = 0; i < lm; ++i) {
      uint8_t a = i < left_.size() ? left_[i] : 0;
      uint8_t b = i < o.left_.size() ? o.left_[i] : 0;
      if (a != b) return false;
    }
    size_t rm = std::max(right_.size(), o.right_.size());
    for (size_t i = 0; i < rm; ++i) {
      uint8_t a = i < right_.size() ? right_[i] : 0;
      uint8_t b = i < o.right_.size() ? o.right_[i] : 0;
      if (a != b) return false;
    }
    return true;
  }

 private:
  std::vector<uint8_t> left_, right_;
};

// Zobrist-style cell hash; XOR of cell_hash over non-blank cells is
// maintained incrementally by the simulators.
inline uint64_t cell_hash(int64_t pos, uint8_t sym) {
  return splitmix64((static_cast<uint64_t>(pos) << 2) ^ sym ^
                    0x9e3779b97f4a7c15ULL);
}

inline uint64_t scalar_hash(uint64_t salt, uint64_t v) {
  return splitmix64(salt ^ splitmix64(v));
}

// Tape wrapper that keeps the XOR hash of its non-blank cells current.
class HashedTape {
 public:
  uint8_t read(int64_t pos) const { return tape_.read(pos); }

  void write(int64_t pos, uint8_t sym) {
    uint8_t old = tape_.read(pos);
    if (old == sym) return;
    if (old != 0) hash_ ^= cell_hash(pos, old);
    if (sym != 0) hash_ ^= cell_hash(pos, sym);
    tape_.write(pos, sym);
  }

  void clear() {
    tape_.clear();
    hash_ = 0;
  }

  uint64_t hash() const { return hash_; }
  const Tape& tape() const { return tape_; }

 private:
  Tape tape_;
  uint64_t hash_ = 0;
};

}  // namespace omegalab::detail
