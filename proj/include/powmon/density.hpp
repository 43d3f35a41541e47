#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powmon/numerical_monoid.hpp"

namespace powmon {

/// Exact fraction with 64-bit parts, always reduced, den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  [[nodiscard]] double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b);
};

enum class DensityVariant {
  Restricted,    // subsets of S ∩ [0,N] containing 0; atoms of P_fin,0(S)
  AllSubsets,    // all 2^(N+1) subsets of [0,N]; membership in Dec(N)
  Unrestricted,  // nonempty subsets of S ∩ [0,N]; atoms of P_fin(S)
};

enum class DensityMode { Exact, MonteCarlo };

std::string to_string(DensityVariant v);
std::string to_string(DensityMode m);

/// In the all-subsets universe `atoms` counts every set outside Dec(N),
/// including the empty set and singletons; identity_count is 0 there.
struct DensityReport {
  std::uint32_t N = 0;
  DensityVariant variant = DensityVariant::Restricted;
  Submonoid monoid;
  DensityMode mode = DensityMode::Exact;
  std::uint64_t total = 0;
  std::uint64_t atoms = 0;
  std::uint64_t decomposables = 0;
  std::uint64_t identity_count = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double estimate = 0;  // decomposables / total, or the sampled fraction
  double stderr_ = 0;   // 0 in exact mode
};

struct ExactOptions {
  /// Largest exponent of the enumerated power set.
  std::uint32_t max_exponent = 22;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Exhaustive classification of every admissible set with max <= N.
/// BudgetExceeded when the enumeration is larger than 2^max_exponent.
DensityReport count_exact(std::uint32_t n, DensityVariant variant, const Submonoid& s = Submonoid(),
                          const ExactOptions& opts = {});

/// Restricted decomposables over N_0 grouped by maximum: out[d] = number of
/// genuine sumsets A with 0 ∈ A and max A = d, for d <= n.
std::vector<std::uint64_t> decomposables_by_max(std::uint32_t n, const ExactOptions& opts = {});

/// Genuine sumset test for any subset of [0, 63] given as a mask (after
/// translation to min 0). Empty and singleton masks are never in Dec.
bool in_dec(std::uint64_t mask);

/// Uniform subsets of [0,N] (independent fair bits), tested for Dec(N).
/// Trials run in fixed chunks of 4096, chunk c seeded with splitmix64(seed, c),
/// so the result does not depend on the thread count.
DensityReport sample_decomposable(std::uint32_t n, std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

struct GrowthRow {
  std::uint32_t N = 0;
  std::uint64_t dec = 0;    // |Dec(N)|
  double slope = 0;         // log2|Dec(N)| / N (0 when Dec(N) is empty)
  double step = 0;          // log2(|Dec(N)| / |Dec(N-1)|), 0 when undefined
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  double proven_lower = 1.754;  // 2^0.811 rounded down
  double proven_upper = 2.0;    // exclusive
};

GrowthReport growth_constant_bounds(std::uint32_t n_max, const ExactOptions& opts = {});

struct DensityLimit {
  Element d_S = 0;             // max A(S) + F(S)
  std::uint32_t window = 0;    // |S ∩ [0, d_S]|
  std::uint64_t union_count = 0;  // |∪_a P((a + S) ∩ [0, d_S])|, counting ∅ and each {a}
  Rational non_atoms;          // union_count / 2^window
  Rational atoms;              // 1 - non_atoms: the limit itself
  Rational printed_formula;    // (1 + |H' ∩ P([0,d_S])|) / 2^window as printed
};

/// Limit of the atom proportion in P_fin(S) by max. VerificationFailure if
/// the result leaves [1/2, 1), UniverseError when the window exceeds 62.
DensityLimit density_limit_pfin(const Submonoid& s);

}  // namespace powmon
