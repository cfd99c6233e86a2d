#pragma once

#include <cassert>
#include <cstdint>
#include <compare>
#include <string>
#include <vector>

namespace tburau {

// Signed arbitrary-precision integer, sign-magnitude over 32-bit limbs.
// Only the ring operations needed by exact Laurent arithmetic are provided:
// there is no general division, only exact halving and power-of-two shifts.
class BigInt {
public:
  BigInt() = default;
  BigInt(long long v) {
    if (v < 0) { neg_ = true; }
    unsigned long long m = neg_ ? 0ULL - static_cast<unsigned long long>(v)
                                : static_cast<unsigned long long>(v);
    while (m) { limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffu)); m >>= 32; }
  }

  static BigInt from_string(const std::string& s) {
    BigInt r;
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) { neg = s[i] == '-'; ++i; }
    assert(i < s.size());
    for (; i < s.size(); ++i) {
      assert(s[i] >= '0' && s[i] <= '9');
      r.mul_small(10);
      r.add_small(static_cast<uint32_t>(s[i] - '0'));
    }
    r.neg_ = neg && !r.is_zero();
    return r;
  }

  bool is_zero() const { return limbs_.empty(); }
  bool negative() const { return neg_; }
  bool odd() const { return !limbs_.empty() && (limbs_[0] & 1u); }

  bool fits_int64() const {
    if (limbs_.size() > 2) return false;
    unsigned long long m = mag_u64();
    return neg_ ? m <= 0x8000000000000000ULL : m < 0x8000000000000000ULL;
  }
  long long to_int64() const {
    assert(fits_int64());
    unsigned long long m = mag_u64();
    return neg_ ? -static_cast<long long>(m) : static_cast<long long>(m);
  }

  friend BigInt operator-(const BigInt& a) {
    BigInt r = a;
    if (!r.is_zero()) r.neg_ = !r.neg_;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.neg_ == b.neg_) {
      BigInt r;
      r.limbs_ = add_mag(a.limbs_, b.limbs_);
      r.neg_ = a.neg_ && !r.limbs_.empty();
      return r;
    }
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (c == 0) return BigInt();
    BigInt r;
    if (c > 0) { r.limbs_ = sub_mag(a.limbs_, b.limbs_); r.neg_ = a.neg_; }
    else       { r.limbs_ = sub_mag(b.limbs_, a.limbs_); r.neg_ = b.neg_; }
    if (r.limbs_.empty()) r.neg_ = false;
    return r;
  }

  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    BigInt r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.limbs_.size(); ++j) {
        uint64_t cur = static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                       r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
      }
      size_t k = i + b.limbs_.size();
      while (carry) {
        uint64_t cur = r.limbs_[k] + carry;
        r.limbs_[k] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
        ++k;
      }
    }
    r.trim();
    r.neg_ = (a.neg_ != b.neg_);
    return r;
  }

  BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
  BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
  BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

  // value * 2^k, k >= 0
  BigInt shl(unsigned k) const {
    if (is_zero() || k == 0) return *this;
    BigInt r = *this;
    unsigned words = k / 32, bits = k % 32;
    if (bits) {
      uint32_t carry = 0;
      for (auto& w : r.limbs_) {
        uint32_t nw = (w << bits) | carry;
        carry = w >> (32 - bits);
        w = nw;
      }
      if (carry) r.limbs_.push_back(carry);
    }
    r.limbs_.insert(r.limbs_.begin(), words, 0u);
    return r;
  }

  // exact value / 2; caller must ensure evenness
  BigInt half() const {
    assert(!odd());
    if (is_zero()) return *this;
    BigInt r = *this;
    uint32_t carry = 0;
    for (size_t i = r.limbs_.size(); i-- > 0;) {
      uint32_t w = r.limbs_[i];
      r.limbs_[i] = (w >> 1) | (carry << 31);
      carry = w & 1u;
    }
    r.trim();
    if (r.limbs_.empty()) r.neg_ = false;
    return r;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.neg_ == b.neg_ && a.limbs_ == b.limbs_;
  }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    if (a.neg_ != b.neg_) return a.neg_ ? std::strong_ordering::less : std::strong_ordering::greater;
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (a.neg_) c = -c;
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> tmp = limbs_;
    std::string digits;
    while (!tmp.empty()) {
      // divide magnitude by 10^9, collecting remainder
      uint64_t rem = 0;
      for (size_t i = tmp.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | tmp[i];
        tmp[i] = static_cast<uint32_t>(cur / 1000000000ULL);
        rem = cur % 1000000000ULL;
      }
      while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
      std::string chunk = std::to_string(rem);
      if (tmp.empty()) {
        digits = chunk + digits;
      } else {
        digits = std::string(9 - chunk.size(), '0') + chunk + digits;
      }
    }
    return (neg_ ? "-" : "") + digits;
  }

private:
  void trim() { while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back(); }
  unsigned long long mag_u64() const {
    unsigned long long m = 0;
    if (limbs_.size() > 1) m = static_cast<unsigned long long>(limbs_[1]) << 32;
    if (!limbs_.empty()) m |= limbs_[0];
    return m;
  }
  void mul_small(uint32_t f) {
    uint64_t carry = 0;
    for (auto& w : limbs_) {
      uint64_t cur = static_cast<uint64_t>(w) * f + carry;
      w = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
    trim();
  }
  void add_small(uint32_t v) {
    uint64_t carry = v;
    for (size_t i = 0; carry && i < limbs_.size(); ++i) {
      uint64_t cur = limbs_[i] + carry;
      limbs_[i] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
  }

  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<uint32_t> r = big;
    uint64_t carry = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      uint64_t cur = r[i] + carry + (i < small.size() ? small[i] : 0u);
      r[i] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
      if (!carry && i >= small.size()) break;
    }
    if (carry) r.push_back(static_cast<uint32_t>(carry));
    return r;
  }
  // requires |a| >= |b|
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r = a;
    int64_t borrow = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      int64_t cur = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0u);
      if (cur < 0) { cur += (1LL << 32); borrow = 1; } else borrow = 0;
      r[i] = static_cast<uint32_t>(cur);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  bool neg_ = false;
  std::vector<uint32_t> limbs_;  // little-endian, no trailing zero limbs
};

}  // namespace tburau
