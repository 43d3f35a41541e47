#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powmon/finite_set.hpp"
#include "powmon/numerical_monoid.hpp"

namespace powmon {

/// Names the divisor-closed submonoid d·(P_fin,0(S) ∩ rev(P_fin,0(T))) of
/// P_fin,0(N_0). S and T are numerical; `trivial` marks {{0}}.
struct DcsDescriptor {
  Element d = 1;
  Submonoid S;
  Submonoid T;
  bool trivial = false;

  static DcsDescriptor full() { return {}; }
  static DcsDescriptor trivial_descriptor() { return {0, Submonoid::trivial(), Submonoid::trivial(), true}; }

  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const DcsDescriptor&, const DcsDescriptor&) = default;
};

/// ⟦A⟧. A set without 0 is first translated by -min(A).
DcsDescriptor dcs_of(const FiniteSet& a);

/// B ∈ D. DomainError when 0 ∉ B.
bool dcs_contains(const DcsDescriptor& d, const FiniteSet& b);

/// Every element of `inner` lies in `outer`.
bool dcs_includes(const DcsDescriptor& outer, const DcsDescriptor& inner);

/// ⟦A⟧ = P_fin,0(N_0), i.e. 1 ∈ A ∩ rev(A).
bool is_full(const FiniteSet& a);

/// Maximal divisor-closed submonoids: S \ {a} for atoms a of S, then
/// T \ {b} for atoms b of T. DomainError for the trivial descriptor.
std::vector<DcsDescriptor> mdcs(const DcsDescriptor& d);

/// Nested MDCS counts. Leaves sit at depth 1.
struct Fingerprint {
  std::uint32_t count = 0;
  std::vector<Fingerprint> children;  // sorted by (count, subtree)

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend auto operator<=>(const Fingerprint& a, const Fingerprint& b) {
    if (auto c = a.count <=> b.count; c != 0) return c;
    return std::lexicographical_compare_three_way(a.children.begin(), a.children.end(), b.children.begin(),
                                                  b.children.end());
  }
};

inline constexpr std::uint32_t kMaxFingerprintDepth = 4;

/// DomainError when depth is 0, BudgetExceeded above max_depth.
Fingerprint mdcs_fingerprint(const DcsDescriptor& d, std::uint32_t depth,
                             std::uint32_t max_depth = kMaxFingerprintDepth);

/// Some A with <A> = S and <rev A> = T, dilated by d; verified before return.
FiniteSet dcs_generator(const DcsDescriptor& d);

struct NoncancellativeWitness {
  std::uint32_t n_star = 0;
  std::uint32_t n = 0;
  FiniteSet B;        // {0} ∪ d[n,3n] ∪ {4dn}
  FiniteSet C;        // {0,2dn}
  FiniteSet D;        // {0,dn}
  FiniteSet F;        // {0} ∪ d[n,5n] ∪ {6dn}
  FiniteSet A;        // B \ {2dn}
  FiniteSet doubled;  // B + B = A + A
  bool members_ok = false;
  bool transfer_ok = false;  // F = B + C = B + D + D
  bool torsion_ok = false;   // A + A = B + B, A != B
};

/// Least n* with d·N_{>=n*} inside both d·S and d·T.
std::uint32_t noncancellative_threshold(const DcsDescriptor& d);

/// The identities for n (0 means n*). DomainError when n < n*,
/// VerificationFailure when any check fails.
NoncancellativeWitness noncancellative_witnesses(const DcsDescriptor& d, std::uint32_t n = 0);

/// (1, {0} ∪ N_{>=n}, N_0).
DcsDescriptor chain_descriptor(std::uint32_t n);

/// A strictly larger descriptor one step closer to the full monoid: S gains
/// F(S), else T gains F(T), else d drops to 1; the trivial descriptor
/// goes straight to the full monoid. nullopt for the full monoid.
std::optional<DcsDescriptor> parent(const DcsDescriptor& d);

}  // namespace powmon
