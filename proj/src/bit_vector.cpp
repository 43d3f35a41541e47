#include "powmon/bit_vector.hpp"

#include <algorithm>

namespace powmon {

BitVec BitVec::interval(std::size_t lo, std::size_t hi) {
  BitVec v;
  if (hi < lo) return v;
  v.words_.assign(hi / kWordBits + 1, ~Word{0});
  for (std::size_t w = 0; w < lo / kWordBits; ++w) v.words_[w] = 0;
  v.words_[lo / kWordBits] &= ~Word{0} << (lo % kWordBits);
  const std::size_t top = hi % kWordBits;
  if (top != kWordBits - 1) v.words_.back() &= (Word{1} << (top + 1)) - 1;
  v.trim();
  return v;
}

BitVec BitVec::from_word(Word w) {
  BitVec v;
  if (w != 0) v.words_.push_back(w);
  return v;
}

void BitVec::set(std::size_t i) {
  const std::size_t w = i / kWordBits;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] |= Word{1} << (i % kWordBits);
}

void BitVec::reset(std::size_t i) {
  const std::size_t w = i / kWordBits;
  if (w >= words_.size()) return;
  words_[w] &= ~(Word{1} << (i % kWordBits));
  trim();
}

std::size_t BitVec::popcount() const {
  std::size_t n = 0;
  for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t BitVec::lowest() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return npos;
}

std::size_t BitVec::highest() const {
  if (words_.empty()) return npos;
  return (words_.size() - 1) * kWordBits + (kWordBits - 1) -
         static_cast<std::size_t>(std::countl_zero(words_.back()));
}

std::size_t BitVec::next_set(std::size_t from) const {
  std::size_t w = from / kWordBits;
  if (w >= words_.size()) return npos;
  Word bits = words_[w] & (~Word{0} << (from % kWordBits));
  while (true) {
    if (bits != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
    if (++w >= words_.size()) return npos;
    bits = words_[w];
  }
}

BitVec BitVec::shifted_left(std::size_t k) const {
  BitVec out;
  out.or_shifted(*this, k);
  return out;
}

BitVec BitVec::shifted_right(std::size_t k) const {
  BitVec out;
  const std::size_t ws = k / kWordBits;
  const std::size_t bs = k % kWordBits;
  if (ws >= words_.size()) return out;
  out.words_.resize(words_.size() - ws);
  for (std::size_t i = 0; i < out.words_.size(); ++i) {
    Word lo = words_[i + ws] >> bs;
    if (bs != 0 && i + ws + 1 < words_.size()) lo |= words_[i + ws + 1] << (kWordBits - bs);
    out.words_[i] = lo;
  }
  out.trim();
  return out;
}

BitVec BitVec::truncated(std::size_t n) const {
  BitVec out;
  const std::size_t full = n / kWordBits;
  out.words_.assign(words_.begin(), words_.begin() + static_cast<std::ptrdiff_t>(std::min(full, words_.size())));
  if (full < words_.size() && n % kWordBits != 0) {
    out.words_.push_back(words_[full] & ((Word{1} << (n % kWordBits)) - 1));
  }
  out.trim();
  return out;
}

void BitVec::or_shifted(const BitVec& src, std::size_t shift) {
  if (src.words_.empty()) return;
  const std::size_t ws = shift / kWordBits;
  const std::size_t bs = shift % kWordBits;
  const std::size_t need = src.words_.size() + ws + (bs != 0 ? 1 : 0);
  if (words_.size() < need) words_.resize(need, 0);
  if (bs == 0) {
    for (std::size_t i = 0; i < src.words_.size(); ++i) words_[i + ws] |= src.words_[i];
  } else {
    for (std::size_t i = 0; i < src.words_.size(); ++i) {
      words_[i + ws] |= src.words_[i] << bs;
      words_[i + ws + 1] |= src.words_[i] >> (kWordBits - bs);
    }
  }
  trim();
}

BitVec& BitVec::operator|=(const BitVec& o) {
  if (words_.size() < o.words_.size()) words_.resize(o.words_.size(), 0);
  for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

BitVec& BitVec::operator&=(const BitVec& o) {
  if (words_.size() > o.words_.size()) words_.resize(o.words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  trim();
  return *this;
}

BitVec& BitVec::operator^=(const BitVec& o) {
  if (words_.size() < o.words_.size()) words_.resize(o.words_.size(), 0);
  for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] ^= o.words_[i];
  trim();
  return *this;
}

bool BitVec::is_subset_of(const BitVec& o) const {
  if (words_.size() > o.words_.size()) return false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~o.words_[i]) != 0) return false;
  }
  return true;
}

std::size_t BitVec::rank(std::size_t i) const {
  std::size_t n = 0;
  const std::size_t full = std::min(i / kWordBits, words_.size());
  for (std::size_t w = 0; w < full; ++w) n += static_cast<std::size_t>(std::popcount(words_[w]));
  if (full < words_.size() && i % kWordBits != 0) {
    n += static_cast<std::size_t>(std::popcount(words_[full] & ((Word{1} << (i % kWordBits)) - 1)));
  }
  return n;
}

void BitVec::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

}  // namespace powmon
