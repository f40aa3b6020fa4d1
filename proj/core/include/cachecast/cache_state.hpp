#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace cachecast {

/// Binary matrix B[c][s] of decoded segments per cache node for one file.
/// Bits only ever flip 0 -> 1 while a file lives. Fixed-capacity storage so
/// states can be copied and mutated in hot loops without allocation.
class CacheState {
 public:
  static constexpr int kMaxCaches = 32;
  static constexpr int kMaxSegments = 64;

  CacheState() = default;
  CacheState(int num_caches, int num_segments)
      : nc_(num_caches), ns_(num_segments) {
    if (num_caches < 0 || num_caches > kMaxCaches)
      throw std::invalid_argument("CacheState: bad cache count");
    if (num_segments < 1 || num_segments > kMaxSegments)
      throw std::invalid_argument("CacheState: bad segment count");
    rows_.fill(0);
  }

  static CacheState all_cached(int num_caches, int num_segments) {
    CacheState s(num_caches, num_segments);
    for (int c = 0; c < num_caches; ++c) s.rows_[c] = s.row_mask();
    return s;
  }

  /// All cached except segment s at cache i (the reference state S^{i,s}).
  static CacheState all_but(int num_caches, int num_segments, int i, int s) {
    CacheState st = all_cached(num_caches, num_segments);
    st.clear(i, s);
    return st;
  }

  int num_caches() const { return nc_; }
  int num_segments() const { return ns_; }

  bool get(int c, int s) const { return (rows_[c] >> s) & 1ULL; }
  void set(int c, int s) { rows_[c] |= (1ULL << s); }
  void clear(int c, int s) { rows_[c] &= ~(1ULL << s); }

  bool row_full(int c) const { return rows_[c] == row_mask(); }
  bool full() const {
    for (int c = 0; c < nc_; ++c)
      if (!row_full(c)) return false;
    return true;
  }

  int zeros_in_row(int c) const {
    return ns_ - std::popcount(rows_[c] & row_mask());
  }
  int total_zeros() const {
    int z = 0;
    for (int c = 0; c < nc_; ++c) z += zeros_in_row(c);
    return z;
  }

  /// Row-major packed index (bit c*ns + s); needs nc*ns <= 63.
  std::uint64_t pack() const {
    std::uint64_t v = 0;
    for (int c = 0; c < nc_; ++c) v |= rows_[c] << (c * ns_);
    return v;
  }
  static CacheState unpack(std::uint64_t v, int num_caches, int num_segments) {
    CacheState s(num_caches, num_segments);
    for (int c = 0; c < num_caches; ++c)
      s.rows_[c] = (v >> (c * num_segments)) & s.row_mask();
    return s;
  }

  bool operator==(const CacheState& o) const {
    if (nc_ != o.nc_ || ns_ != o.ns_) return false;
    for (int c = 0; c < nc_; ++c)
      if (rows_[c] != o.rows_[c]) return false;
    return true;
  }

 private:
  std::uint64_t row_mask() const {
    return ns_ == 64 ? ~0ULL : ((1ULL << ns_) - 1);
  }

  int nc_ = 0;
  int ns_ = 1;
  std::array<std::uint64_t, kMaxCaches> rows_{};
};

}  // namespace cachecast
