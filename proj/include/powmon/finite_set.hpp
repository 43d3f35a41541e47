#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "powmon/bit_vector.hpp"

namespace powmon {

using Element = std::uint32_t;

/// Largest element any FiniteSet may hold. Defaults to 4096.
Element universe_bound();
void set_universe_bound(Element bound);

/// A finite nonempty subset of the nonnegative integers.
///
/// Immutable value backed by a bit vector; bit i is set iff i is an element.
/// Every constructor and operation checks the universe bound and throws
/// UniverseError instead of truncating.
class FiniteSet {
 public:
  /// The identity {0}.
  FiniteSet();
  FiniteSet(std::initializer_list<Element> elems);

  /// Sorts the input. Rejects duplicates and empty input.
  static FiniteSet from_elements(std::span<const Element> elems);
  static FiniteSet from_elements(std::span<const long long> elems);
  /// Throws DomainError on an empty vector.
  static FiniteSet from_bits(BitVec bits);
  /// The discrete interval [lo, hi].
  static FiniteSet interval(Element lo, Element hi);
  static FiniteSet singleton(Element x);

  [[nodiscard]] Element min() const { return min_; }
  [[nodiscard]] Element max() const { return max_; }
  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] bool contains(Element x) const { return bits_.test(x); }
  [[nodiscard]] bool is_identity() const { return max_ == 0; }
  [[nodiscard]] const BitVec& bits() const { return bits_; }
  [[nodiscard]] std::vector<Element> elements() const;

  /// Literal form, e.g. "{0,2,3}".
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const FiniteSet& a, const FiniteSet& b) { return a.bits_ == b.bits_; }
  /// Canonical order: by max, then lexicographic on the ascending element list.
  friend std::strong_ordering operator<=>(const FiniteSet& a, const FiniteSet& b);

 private:
  explicit FiniteSet(BitVec bits);
  BitVec bits_;
  Element min_ = 0;
  Element max_ = 0;
  std::size_t size_ = 1;
};

std::ostream& operator<<(std::ostream& os, const FiniteSet& s);

/// Parses `{a,b,...}`; also accepts `[lo,hi]` as an interval shorthand.
FiniteSet parse_set(std::string_view text);

FiniteSet sumset(const FiniteSet& a, const FiniteSet& b);
/// k-fold sumset; k_fold(A, 0) = {0}.
FiniteSet k_fold(const FiniteSet& a, std::uint32_t k);
/// Elementwise multiplication by k >= 1.
FiniteSet dilate(const FiniteSet& a, std::uint32_t k);
/// max(A) - A.
FiniteSet reversion(const FiniteSet& a);
/// A + {k}.
FiniteSet translate(const FiniteSet& a, Element k);
/// gcd of the elements (0 for {0}).
Element set_gcd(const FiniteSet& a);
/// Distances between consecutive elements, ascending; empty for singletons.
std::vector<Element> delta_set(const FiniteSet& a);
/// A \ {x}; DomainError if the result would be empty.
FiniteSet without(const FiniteSet& a, Element x);

struct Normalized {
  Element shift = 0;
  Element d = 1;
  FiniteSet core;
  friend bool operator==(const Normalized&, const Normalized&) = default;
};

/// A = shift + d * core with 0 in core and gcd(core) = 1. Singletons map to
/// (x, 1, {0}).
Normalized normalize(const FiniteSet& a);
/// Inverse of normalize.
FiniteSet denormalize(const Normalized& n);

}  // namespace powmon
