#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "powmon/finite_set.hpp"
#include "powmon/numerical_monoid.hpp"

namespace powmon {

enum class AmbientKind {
  Restricted,    // P_fin,0(S): finite subsets of S containing 0
  Unrestricted,  // P_fin(S): all finite nonempty subsets of S
};

/// The monoid a set is considered in.
struct Ambient {
  AmbientKind kind = AmbientKind::Restricted;
  Submonoid monoid;

  static Ambient restricted(Submonoid s = Submonoid()) { return {AmbientKind::Restricted, std::move(s)}; }
  static Ambient unrestricted(Submonoid s = Submonoid()) { return {AmbientKind::Unrestricted, std::move(s)}; }

  [[nodiscard]] bool contains(const FiniteSet& a) const;
  /// DomainError naming `what` when a is not an element.
  void require(const FiniteSet& a, const char* what) const;
  [[nodiscard]] std::string to_string() const;
};

/// Node limit shared by every combinatorial search. Exceeding it raises
/// BudgetExceeded or marks a result incomplete; nothing is silently dropped.
struct Budget {
  std::uint64_t max_nodes = 10'000'000;
};

using SetPair = std::pair<FiniteSet, FiniteSet>;

// ---------------------------------------------------------------------------
// Low-level decomposition search on sets inside [0, 63].

/// B, C containing 0 with |B|, |C| >= 2, B + C = target and max B <= max C.
/// `target` must contain bit 0. Returns the pair as bit masks.
std::optional<std::pair<std::uint64_t, std::uint64_t>> split_mask(std::uint64_t target);

// ---------------------------------------------------------------------------
// Divisibility

/// Some C in the ambient with B + C = A, or nullopt. The returned C is
/// minimal under inclusion (greedy trim of the largest complement).
std::optional<FiniteSet> divides(const FiniteSet& b, const FiniteSet& a, const Ambient& amb);

/// Largest C in the ambient with B + C ⊆ A, or nullopt when empty.
std::optional<FiniteSet> max_complement(const FiniteSet& b, const FiniteSet& a, const Ambient& amb);

/// Every divisor of A, ascending by (max, lexicographic).
std::vector<FiniteSet> divisors(const FiniteSet& a, const Ambient& amb, const Budget& budget = {});

/// τ(A) = number of divisors.
std::uint64_t divisor_count(const FiniteSet& a, const Ambient& amb, const Budget& budget = {});

/// Every C in the ambient with B + C = A, ascending.
std::vector<FiniteSet> complements(const FiniteSet& b, const FiniteSet& a, const Ambient& amb,
                                   const Budget& budget = {});

// ---------------------------------------------------------------------------
// Atoms

struct AtomCheck {
  bool atom = false;
  /// When not an atom: two non-units summing to A.
  std::optional<SetPair> certificate;
};

/// DomainError for the identity or a set outside the ambient.
AtomCheck is_atom(const FiniteSet& a, const Ambient& amb, const Budget& budget = {});

// ---------------------------------------------------------------------------
// Factorizations

/// A multiset of atoms, stored in non-increasing canonical order.
struct Factorization {
  std::vector<FiniteSet> parts;

  [[nodiscard]] std::size_t length() const { return parts.size(); }
  [[nodiscard]] FiniteSet sum() const;
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const Factorization&, const Factorization&) = default;
  friend auto operator<=>(const Factorization& a, const Factorization& b) {
    return std::lexicographical_compare_three_way(a.parts.begin(), a.parts.end(), b.parts.begin(), b.parts.end());
  }
};

struct FactorizationSet {
  std::vector<Factorization> items;  // sorted, deduplicated
  bool complete = true;
  std::uint64_t nodes = 0;
};

/// Z(A). When the budget runs out, `complete` is false and `items` holds
/// the factorizations found so far (each one genuine).
FactorizationSet factorizations(const FiniteSet& a, const Ambient& amb, const Budget& budget = {});

/// One factorization of A found by repeated splitting.
Factorization some_factorization(const FiniteSet& a, const Ambient& amb, const Budget& budget = {});

struct LengthSet {
  std::vector<std::uint32_t> lengths;
  std::vector<std::uint32_t> delta;

  [[nodiscard]] std::uint32_t min() const { return lengths.front(); }
  [[nodiscard]] std::uint32_t max() const { return lengths.back(); }
};

LengthSet make_length_set(std::vector<std::uint32_t> lengths);
LengthSet length_set(const FactorizationSet& z);
/// BudgetExceeded when Z(A) could not be completed.
LengthSet length_set(const FiniteSet& a, const Ambient& amb, const Budget& budget = {});

/// max{ℓ, m} after removing the common part of the two multisets.
std::uint32_t factorization_distance(const Factorization& z, const Factorization& w);

/// Least M making Z(A) connected under steps of distance <= M.
/// DomainError on an incomplete set.
std::uint32_t catenary_degree(const FactorizationSet& z);
std::uint32_t catenary_degree(const FiniteSet& a, const Ambient& amb, const Budget& budget = {});

// ---------------------------------------------------------------------------
// Constructive counterexamples

struct OmegaWitness {
  Element a = 0;
  std::uint32_t n = 0;
  std::uint32_t bound = 0;  // certified ω({0,a}) >= bound = n + 2
  FiniteSet pair_atom;      // {0,2a}
  FiniteSet triple_atom;    // {0,2a,3a}
  FiniteSet long_atom;      // {0,a,a(2n+5)}
  std::vector<FiniteSet> sums;  // A_{m,n} for m = 1..n
  FiniteSet cofactor;           // a·([0,2n+4] ∪ [2n+7,4n+7])
  bool closed_form_ok = false;
  bool divides_full_sum = false;
  bool no_proper_subsum_divisible = false;
};

/// Certifies ω(P_fin,0(S), {0,a}) >= n + 2. VerificationFailure if any check fails.
OmegaWitness omega_lower_bound(const Submonoid& s, Element a, std::uint32_t n);

struct PrimeCheck {
  bool prime = false;  // only {1} in P_fin(N_0)
  std::optional<SetPair> witness;  // A | B + C, A ∤ B, A ∤ C
  std::uint32_t m = 0;             // interval parameter, when that construction was used
};

/// Non-primality witness for A in P_fin(S).
PrimeCheck prime_counterexample(const FiniteSet& a, const Submonoid& s);

struct StrongAtomRefutation {
  std::uint32_t n = 0;
  Factorization repeated;     // n copies of A
  Factorization alternative;  // a different factorization of nA
};

/// Least N <= max_n with |Z(NA)| > 1. BudgetExceeded when none is found.
StrongAtomRefutation strong_atom_refuter(const FiniteSet& a, const Ambient& amb, std::uint32_t max_n = 64,
                                         const Budget& budget = {});

struct LengthSearchBounds {
  Element max_element = 12;
  std::size_t max_cardinality = 8;
  Budget budget;
};

/// First A (by max, then cardinality, then lexicographic) with L(A) = target.
/// nullopt means "not found within bounds", nothing more.
std::optional<FiniteSet> search_length_set(const std::vector<std::uint32_t>& target, const Ambient& amb,
                                           const LengthSearchBounds& bounds = {});

}  // namespace powmon
