#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace powmon {

/// Growable bit vector over 64-bit words. Trailing zero words are always
/// trimmed, so two vectors holding the same bits compare equal.
class BitVec {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVec() = default;

  static BitVec interval(std::size_t lo, std::size_t hi);  // bits lo..hi inclusive
  static BitVec from_word(Word w);

  [[nodiscard]] bool test(std::size_t i) const {
    const std::size_t w = i / kWordBits;
    return w < words_.size() && ((words_[w] >> (i % kWordBits)) & 1U) != 0;
  }
  void set(std::size_t i);
  void reset(std::size_t i);

  [[nodiscard]] bool empty() const { return words_.empty(); }
  [[nodiscard]] std::size_t popcount() const;
  // Both require a non-empty vector.
  [[nodiscard]] std::size_t lowest() const;
  [[nodiscard]] std::size_t highest() const;

  /// Smallest set bit >= from, or npos.
  [[nodiscard]] std::size_t next_set(std::size_t from) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  [[nodiscard]] BitVec shifted_left(std::size_t k) const;
  [[nodiscard]] BitVec shifted_right(std::size_t k) const;
  /// Bits strictly below n.
  [[nodiscard]] BitVec truncated(std::size_t n) const;
  /// this |= (src << shift), the inner loop of every sumset.
  void or_shifted(const BitVec& src, std::size_t shift);

  BitVec& operator|=(const BitVec& o);
  BitVec& operator&=(const BitVec& o);
  BitVec& operator^=(const BitVec& o);
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;

  [[nodiscard]] bool is_subset_of(const BitVec& o) const;
  /// Number of set bits strictly below i.
  [[nodiscard]] std::size_t rank(std::size_t i) const;

  [[nodiscard]] std::span<const Word> words() const { return words_; }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const int tz = std::countr_zero(bits);
        f(w * kWordBits + static_cast<std::size_t>(tz));
        bits &= bits - 1;
      }
    }
  }

 private:
  void trim();
  std::vector<Word> words_;
};

}  // namespace powmon
