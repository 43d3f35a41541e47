#pragma once

#include <random>

#include "oracle.hpp"
#include "powmon/finite_set.hpp"

inline oracle::Set to_oracle(const powmon::FiniteSet& a) {
  oracle::Set s;
  for (auto x : a.elements()) s.insert(static_cast<int>(x));
  return s;
}

inline powmon::FiniteSet from_oracle(const oracle::Set& s) {
  std::vector<long long> v(s.begin(), s.end());
  return powmon::FiniteSet::from_elements(std::span<const long long>(v));
}

inline powmon::FiniteSet from_mask(std::uint64_t m) { return from_oracle(oracle::from_mask(m)); }

/// Random nonempty subset of [lo, hi]; with_zero forces 0 in.
inline powmon::FiniteSet random_set(std::mt19937_64& rng, unsigned hi, bool with_zero) {
  std::uint64_t m = 0;
  while (m == 0) m = rng() & ((std::uint64_t{1} << (hi + 1)) - 1);
  if (with_zero) m |= 1;
  return from_mask(m);
}
