#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace bunchkit {

// Subset of {0..n-1}. One inline word covers frames up to 64 states.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t n) : n_(static_cast<uint32_t>(n)), w_((n + 63) / 64, 0) {}

  static StateSet full(std::size_t n) {
    StateSet s(n);
    for (auto& w : s.w_) w = ~uint64_t{0};
    s.trim();
    return s;
  }
  static StateSet single(std::size_t n, std::size_t i) {
    StateSet s(n);
    s.set(i);
    return s;
  }

  std::size_t universe() const { return n_; }
  std::size_t words() const { return w_.size(); }
  uint64_t word(std::size_t i) const { return w_[i]; }

  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= uint64_t{1} << (i & 63); }
  void set(std::size_t i, bool v) {
    if (v) set(i); else reset(i);
  }
  void reset(std::size_t i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }
  bool intersects(const StateSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool subset_of(const StateSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  StateSet& operator|=(const StateSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  StateSet& operator&=(const StateSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  StateSet& operator-=(const StateSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }
  StateSet operator~() const {
    StateSet s = *this;
    for (auto& w : s.w_) w = ~w;
    s.trim();
    return s;
  }

  friend bool operator==(const StateSet& a, const StateSet& b) { return a.n_ == b.n_ && a.w_ == b.w_; }
  friend bool operator<(const StateSet& a, const StateSet& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    for (std::size_t i = a.w_.size(); i-- > 0;)
      if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i];
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      uint64_t w = w_[i];
      while (w) {
        int b = std::countr_zero(w);
        f(static_cast<int>(i * 64 + b));
        w &= w - 1;
      }
    }
  }
  // First member, or -1.
  int first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return static_cast<int>(i * 64 + std::countr_zero(w_[i]));
    return -1;
  }
  std::vector<int> elements() const {
    std::vector<int> out;
    for_each([&](int i) { out.push_back(i); });
    return out;
  }
  std::size_t hash() const {
    std::size_t h = n_;
    for (auto w : w_) h = h * 1000003u ^ std::hash<uint64_t>{}(w);
    return h;
  }

 private:
  void trim() {
    if (n_ % 64 && !w_.empty()) w_.back() &= (uint64_t{1} << (n_ % 64)) - 1;
  }
  uint32_t n_ = 0;
  boost::container::small_vector<uint64_t, 1> w_;
};

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const { return s.hash(); }
};

}  // namespace bunchkit
