#pragma once

// Backtracking search for genuine sumset decompositions, shared by the
// factorization and density modules. Works over any bit container exposing
// the BitVec member subset used below; Bits64 is the single-word fast path.

#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "powmon/bit_vector.hpp"
#include "powmon/error.hpp"

namespace powmon::detail {

struct Bits64 {
  std::uint64_t w = 0;
  static constexpr std::size_t npos = BitVec::npos;

  [[nodiscard]] bool test(std::size_t i) const { return i < 64 && ((w >> i) & 1U) != 0; }
  void set(std::size_t i) { w |= std::uint64_t{1} << i; }
  [[nodiscard]] bool empty() const { return w == 0; }
  [[nodiscard]] std::size_t popcount() const { return static_cast<std::size_t>(std::popcount(w)); }
  [[nodiscard]] std::size_t highest() const { return 63 - static_cast<std::size_t>(std::countl_zero(w)); }
  [[nodiscard]] Bits64 shifted_right(std::size_t k) const { return {k >= 64 ? 0 : w >> k}; }
  void or_shifted(const Bits64& s, std::size_t k) {
    if (k < 64) w |= s.w << k;
  }
  [[nodiscard]] Bits64 truncated(std::size_t n) const { return {n >= 64 ? w : w & ((std::uint64_t{1} << n) - 1)}; }
  [[nodiscard]] bool is_subset_of(const Bits64& o) const { return (w & ~o.w) == 0; }
  [[nodiscard]] std::size_t next_set(std::size_t from) const {
    if (from >= 64) return npos;
    const std::uint64_t rest = w & (~std::uint64_t{0} << from);
    return rest == 0 ? npos : static_cast<std::size_t>(std::countr_zero(rest));
  }
  template <typename F>
  void for_each(F&& f) const {
    std::uint64_t bits = w;
    while (bits != 0) {
      f(static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  friend Bits64 operator&(Bits64 a, const Bits64& b) { return {a.w & b.w}; }
  friend bool operator==(const Bits64&, const Bits64&) = default;
};

/// Finds B, C with 0 in both, |B|, |C| >= 2, B + C = target, B inside
/// b_allowed, C inside c_allowed and max B <= max(target) / 2.
/// Every node counts against *nodes; BudgetExceeded past `limit`.
template <class Bits>
class SplitSearch {
 public:
  SplitSearch(const Bits& target, const Bits& b_allowed, const Bits& c_allowed, std::uint64_t* nodes,
              std::uint64_t limit)
      : target_(target), c_allowed_(c_allowed), nodes_(nodes), limit_(limit) {
    top_ = target.highest();
    cand_ = (target & b_allowed).truncated(top_ / 2 + 1);
    shifts_.resize(top_ / 2 + 1);
  }

  std::optional<std::pair<Bits, Bits>> run() {
    if (!target_.test(0) || top_ < 2) return std::nullopt;
    Bits b;
    b.set(0);
    const Bits c = target_ & c_allowed_;
    if (!c.test(0)) return std::nullopt;
    if (dfs(b, c, 0)) return std::make_pair(found_b_, found_c_);
    return std::nullopt;
  }

 private:
  const Bits& shift(std::size_t x) {
    if (shifts_[x].empty()) shifts_[x] = target_.shifted_right(x);
    return shifts_[x];
  }

  bool dfs(const Bits& b, const Bits& c, std::size_t last) {
    for (std::size_t x = cand_.next_set(last + 1); x != Bits::npos; x = cand_.next_set(x + 1)) {
      if (++*nodes_ > limit_) throw BudgetExceeded("decomposition search exceeded its node budget");
      const Bits c2 = c & shift(x);
      if (c2.popcount() < 2) continue;
      Bits b2 = b;
      b2.set(x);
      Bits sum;
      b2.for_each([&](std::size_t y) { sum.or_shifted(c2, y); });
      // Elements up to x can no longer gain a representation.
      if (!target_.truncated(x + 1).is_subset_of(sum)) continue;
      if (sum == target_) {
        found_b_ = b2;
        found_c_ = c2;
        return true;
      }
      if (dfs(b2, c2, x)) return true;
    }
    return false;
  }

  Bits target_;
  Bits c_allowed_;
  Bits cand_;
  std::size_t top_ = 0;
  std::vector<Bits> shifts_;
  std::uint64_t* nodes_;
  std::uint64_t limit_;
  Bits found_b_;
  Bits found_c_;
};

}  // namespace powmon::detail
