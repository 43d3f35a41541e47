#pragma once

#include <cstdint>
#include <optional>

#include "powmon/finite_set.hpp"
#include "powmon/numerical_monoid.hpp"

namespace powmon {

/// Large-n shape of the iterated sumsets of a set containing 0:
/// nA = <A> ∩ (n·max A − <rev A>) for every n >= n_star.
///
/// S and T are the spans of the gcd-reduced core, so both are numerical.
struct StructuralForm {
  std::uint32_t n_star = 1;
  Element d = 1;
  Submonoid S;
  Submonoid T;
};

struct NStarOptions {
  /// Extra consecutive n the formula must keep holding for; 0 means max(core) + 2.
  std::uint32_t window = 0;
  /// Give up (BudgetExceeded) past this n; 0 means as far as the universe bound allows.
  std::uint32_t max_n = 0;
};

/// Least n from which the structural formula holds on a verified window.
/// Requires 0 in A and A != {0}; a gcd > 1 is factored out.
std::uint32_t n_star(const FiniteSet& a, const NStarOptions& opts = {});
StructuralForm structural_form(const FiniteSet& a, const NStarOptions& opts = {});

/// <A> ∩ (n·max A − <rev A>), without checking the threshold.
FiniteSet nfold_formula(const FiniteSet& a, std::uint32_t n);
/// nA through the structural formula; DomainError when n < n_star(A).
FiniteSet structural_nfold(const FiniteSet& a, std::uint32_t n);

/// Explicit C with B + C = NA for B in P_fin,0(<A>) ∩ rev(P_fin,0(<rev A>)),
/// built from the head/middle/tail split of NA and verified before return.
FiniteSet divisor_witness(const FiniteSet& b, const FiniteSet& a, std::uint32_t big_n);

/// Smallest N accepted by divisor_witness for this pair (N >= n_star and the
/// gap inequality), or nullopt when B is outside the divisor-closed hull of A.
std::optional<std::uint32_t> divisor_witness_threshold(const FiniteSet& b, const FiniteSet& a);

struct CancellationWitness {
  std::uint32_t n = 0;
  FiniteSet b;          // proper subset of nA
  FiniteSet n_fold;     // nA
  FiniteSet next_fold;  // (n+1)A = A + b
};

/// A + B = (n+1)A with B ⊊ nA: A is not cancellative. DomainError for singletons.
CancellationWitness cancellation_counterexample(const FiniteSet& a);

enum class GrothendieckVariant { Unrestricted, Restricted };

struct GrothendieckClass {
  long long max_diff = 0;
  long long min_diff = 0;  // always 0 for the restricted variant
  friend bool operator==(const GrothendieckClass&, const GrothendieckClass&) = default;
};

/// Image of the formal difference [A] − [B] in Z ⊕ Z (unrestricted) or Z (restricted).
GrothendieckClass grothendieck_class(const FiniteSet& a, const FiniteSet& b, GrothendieckVariant variant);

/// Searches E in the ambient with A + D + E = C + B + E. Unrestricted
/// candidates are intervals inside S, restricted ones are S ∩ [0, y].
std::optional<FiniteSet> grothendieck_witness(const FiniteSet& a, const FiniteSet& b, const FiniteSet& c,
                                              const FiniteSet& d, GrothendieckVariant variant,
                                              const Submonoid& s = Submonoid());

}  // namespace powmon
