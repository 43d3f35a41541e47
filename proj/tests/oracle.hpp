#pragma once

// Brute-force reference implementations. Deliberately naive: std::set and
// exhaustive subset scans, sharing no code with the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Set = std::set<int>;

inline Set sum(const Set& a, const Set& b) {
  Set out;
  for (int x : a)
    for (int y : b) out.insert(x + y);
  return out;
}

inline Set fold(const Set& a, int k) {
  Set out{0};
  for (int i = 0; i < k; ++i) out = sum(out, a);
  return out;
}

inline Set rev(const Set& a) {
  Set out;
  for (int x : a) out.insert(*a.rbegin() - x);
  return out;
}

inline Set from_mask(std::uint64_t m) {
  Set out;
  for (int i = 0; i < 64; ++i)
    if ((m >> i) & 1U) out.insert(i);
  return out;
}

/// Membership of [0, limit] in the monoid generated by gens (dynamic programming).
inline std::vector<bool> monoid_table(const std::vector<int>& gens, int limit) {
  std::vector<bool> in(limit + 1, false);
  in[0] = true;
  for (int n = 1; n <= limit; ++n)
    for (int g : gens)
      if (g > 0 && g <= n && in[n - g]) in[n] = true;
  return in;
}

struct MonoidData {
  int d = 1;
  int frobenius = 0;
  int genus = 0;
  std::vector<int> atoms;
};

/// Reduced data of <gens>: gcd, Frobenius (F(N_0) = 0), genus, minimal generators.
inline MonoidData monoid_data(std::vector<int> gens) {
  MonoidData m;
  int g = 0;
  for (int x : gens) g = std::gcd(g, x);
  m.d = g;
  for (int& x : gens) x /= g;
  int mx = *std::max_element(gens.begin(), gens.end());
  const int limit = mx * mx + 2 * mx + 4;
  const auto in = monoid_table(gens, limit);
  for (int n = 1; n <= limit; ++n)
    if (!in[n]) {
      m.frobenius = n;
      ++m.genus;
    }
  for (int n = 1; n <= limit; ++n) {
    if (!in[n]) continue;
    bool sum_of_two = false;
    for (int a = 1; a < n && !sum_of_two; ++a) sum_of_two = in[a] && in[n - a];
    if (!sum_of_two) m.atoms.push_back(n);
  }
  return m;
}

inline bool subset_of(const Set& a, const std::vector<bool>& s) {
  for (int x : a)
    if (x >= static_cast<int>(s.size()) || !s[x]) return false;
  return true;
}

/// All subsets of `pool` (as sets), pool small.
inline std::vector<Set> subsets(const std::vector<int>& pool) {
  std::vector<Set> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << pool.size()); ++m) {
    Set s;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if ((m >> i) & 1U) s.insert(pool[i]);
    out.push_back(s);
  }
  return out;
}

/// Genuine sumset test: B + C = A with 0 in both, |B|, |C| >= 2, over all
/// subsets of A (A must contain 0).
inline bool genuine(const Set& a) {
  std::vector<int> rest(std::next(a.begin()), a.end());
  const auto subs = subsets(rest);
  for (const Set& b0 : subs) {
    if (b0.empty()) continue;
    Set b = b0;
    b.insert(0);
    for (const Set& c0 : subs) {
      if (c0.empty()) continue;
      Set c = c0;
      c.insert(0);
      if (sum(b, c) == a) return true;
    }
  }
  return false;
}

/// Every C (0 in C, C inside s) with B + C = A; a scan over subsets of A.
inline std::vector<Set> complements_restricted(const Set& b, const Set& a) {
  std::vector<Set> out;
  std::vector<int> rest(std::next(a.begin()), a.end());
  for (Set c : subsets(rest)) {
    c.insert(0);
    if (sum(b, c) == a) out.push_back(c);
  }
  return out;
}

/// Restricted divisors of A over N_0 by scanning subsets of A.
inline std::vector<Set> divisors_restricted(const Set& a) {
  std::vector<Set> out;
  std::vector<int> rest(std::next(a.begin()), a.end());
  for (Set b : subsets(rest)) {
    b.insert(0);
    if (!complements_restricted(b, a).empty()) out.push_back(b);
  }
  return out;
}

/// Z(A) in P_fin,0(N_0) as sorted multisets of sets.
inline std::set<std::vector<Set>> factorizations_restricted(const Set& a) {
  std::map<Set, std::set<std::vector<Set>>> memo;
  std::function<std::set<std::vector<Set>>(const Set&)> go = [&](const Set& x) {
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    std::set<std::vector<Set>> out;
    if (x == Set{0}) {
      out.insert(std::vector<Set>{});
    } else {
      for (const Set& u : divisors_restricted(x)) {
        if (u.size() < 2 || genuine(u)) continue;
        for (const Set& c : complements_restricted(u, x)) {
          for (std::vector<Set> z : go(c)) {
            z.push_back(u);
            std::sort(z.begin(), z.end());
            out.insert(z);
          }
        }
      }
    }
    memo[x] = out;
    return out;
  };
  return go(a);
}

}  // namespace oracle
