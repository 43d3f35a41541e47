#include <doctest.h>

#include <cmath>

#include "powmon/density.hpp"
#include "powmon/error.hpp"
#include "powmon/factorization.hpp"
#include "support.hpp"

using namespace powmon;

namespace {

// Genuine sumsets with 0 and max exactly d, by the all-pairs oracle.
std::uint64_t oracle_dec_with_max(int d) {
  if (d == 0) return 0;
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << (d - 1)); ++m) {
    const std::uint64_t mask = 1U | (m << 1) | (std::uint64_t{1} << d);
    count += oracle::genuine(oracle::from_mask(mask)) ? 1 : 0;
  }
  return count;
}

// |∪_a P((a + S) ∩ [0, w])| over atoms a of S, subsets taken inside S ∩ [0, w].
std::uint64_t oracle_union(const std::vector<int>& gens, int w) {
  const auto s = oracle::monoid_table(gens, w);
  const auto data = oracle::monoid_data(gens);
  std::vector<int> window;
  for (int x = 0; x <= w; ++x)
    if (s[x]) window.push_back(x);
  std::uint64_t count = 0;
  for (const oracle::Set& x : oracle::subsets(window)) {
    bool inside = false;
    for (int a : data.atoms) {
      bool ok = true;
      for (int v : x) ok = ok && v >= a && s[v - a];
      inside = inside || ok;
    }
    count += inside ? 1 : 0;
  }
  return count;
}

}  // namespace

TEST_CASE("rational arithmetic") {
  CHECK(Rational::make(2, 4) == Rational{1, 2});
  CHECK(Rational::make(3, -6) == Rational{-1, 2});
  CHECK(Rational::make(0, 5) == Rational{0, 1});
  CHECK(Rational::make(11, 16).to_string() == "11/16");
  CHECK(Rational{1, 2} < Rational{11, 16});
  CHECK_THROWS(Rational::make(1, 0));
}

TEST_CASE("exact restricted counts") {
  const DensityReport r4 = count_exact(4, DensityVariant::Restricted);
  CHECK(r4.total == 16);
  CHECK(r4.identity_count == 1);
  CHECK(r4.decomposables == 5);
  CHECK(r4.atoms == 10);
  const DensityReport r1 = count_exact(1, DensityVariant::Restricted);
  CHECK(r1.total == 2);
  CHECK(r1.atoms == 1);
  CHECK(r1.decomposables == 0);

  std::uint64_t running = 0;
  for (std::uint32_t n = 1; n <= 14; ++n) {
    const DensityReport r = count_exact(n, DensityVariant::Restricted);
    CHECK(r.atoms + r.decomposables + r.identity_count == r.total);
    CHECK(r.total == (std::uint64_t{1} << n));
    if (n <= 9) {
      running += oracle_dec_with_max(static_cast<int>(n));
      CHECK(r.decomposables == running);
    }
  }
}

TEST_CASE("decomposables by max and the all-subsets universe") {
  const auto by_max = decomposables_by_max(12);
  REQUIRE(by_max.size() == 13);
  for (int d = 0; d <= 9; ++d) CHECK(by_max[d] == oracle_dec_with_max(d));
  const DensityReport a4 = count_exact(4, DensityVariant::AllSubsets);
  CHECK(a4.total == 32);
  CHECK(a4.decomposables == 8);
  CHECK(a4.atoms == 24);
  CHECK(a4.identity_count == 0);
  for (std::uint32_t n = 0; n <= 12; ++n) {
    std::uint64_t want = 0;
    for (std::uint32_t d = 0; d <= n; ++d) want += by_max[d] * (n - d + 1);
    CHECK(count_exact(n, DensityVariant::AllSubsets).decomposables == want);
  }
  // in_dec against the oracle, shifted sets included
  for (std::uint64_t m = 0; m < (1U << 10); ++m) {
    const oracle::Set o = oracle::from_mask(m);
    bool want = false;
    if (o.size() >= 3) {
      oracle::Set shifted;
      for (int x : o) shifted.insert(x - *o.begin());
      want = oracle::genuine(shifted);
    }
    CHECK(in_dec(m) == want);
  }
}

TEST_CASE("unrestricted counts over N_0") {
  for (std::uint32_t n = 1; n <= 8; ++n) {
    const DensityReport u = count_exact(n, DensityVariant::Unrestricted);
    const DensityReport r = count_exact(n, DensityVariant::Restricted);
    CHECK(u.total == (std::uint64_t{1} << (n + 1)) - 1);
    CHECK(u.identity_count == 1);
    // {1} plus the restricted atoms; every set with min > 0 splits off {min}
    CHECK(u.atoms == r.atoms + 1);
  }
  const Submonoid s23 = Submonoid::from_generators({2, 3});
  const DensityReport w = count_exact(7, DensityVariant::Restricted, s23);
  CHECK(w.total == (std::uint64_t{1} << 6));
  CHECK(w.atoms + w.decomposables + w.identity_count == w.total);
  std::uint64_t atoms = 0;
  for (std::uint64_t m = 1; m < (1U << 8); m += 2) {
    const FiniteSet a = from_mask(m);
    if (!s23.contains_all(a) || a.is_identity()) continue;
    atoms += is_atom(a, Ambient::restricted(s23)).atom ? 1 : 0;
  }
  CHECK(w.atoms == atoms);
}

TEST_CASE("atom proportion trend") {
  double prev = 0;
  for (std::uint32_t n = 4; n <= 14; ++n) {
    const DensityReport r = count_exact(n, DensityVariant::Restricted);
    const double p = static_cast<double>(r.atoms) / static_cast<double>(r.total);
    WARN(p >= prev);
    prev = p;
  }
  const auto frac = [](std::uint32_t n) {
    const DensityReport r = count_exact(n, DensityVariant::Restricted);
    return static_cast<double>(r.atoms) / static_cast<double>(r.total);
  };
  CHECK(frac(12) > frac(8));
  CHECK_THROWS_AS(count_exact(30, DensityVariant::Restricted), BudgetExceeded);
}

TEST_CASE("Monte Carlo sampling") {
  CHECK(sample_decomposable(0, 1000, 1).estimate == 0);
  for (std::uint32_t n : {4U, 8U, 12U}) {
    const DensityReport mc = sample_decomposable(n, 40'000, 99);
    const DensityReport ex = count_exact(n, DensityVariant::AllSubsets);
    CHECK(mc.variant == DensityVariant::AllSubsets);
    CHECK(mc.mode == DensityMode::MonteCarlo);
    CHECK(mc.trials == 40'000);
    CHECK(std::abs(mc.estimate - ex.estimate) <= 4 * mc.stderr_);
  }
  const DensityReport a = sample_decomposable(10, 20'000, 7, 1);
  const DensityReport b = sample_decomposable(10, 20'000, 7, 4);
  CHECK(a.decomposables == b.decomposables);
  CHECK(a.estimate == b.estimate);
  const DensityReport c = sample_decomposable(10, 20'000, 8, 4);
  CHECK(c.decomposables != a.decomposables);
}

TEST_CASE("growth rows") {
  const GrowthReport g = growth_constant_bounds(16);
  CHECK(g.proven_lower == doctest::Approx(1.754));
  CHECK(g.proven_upper == 2.0);
  const auto by_max = decomposables_by_max(16);
  for (const GrowthRow& row : g.rows) {
    std::uint64_t want = 0;
    for (std::uint32_t d = 0; d <= row.N; ++d) want += by_max[d] * (row.N - d + 1);
    CHECK(row.dec == want);
    if (row.N >= 8) {
      CHECK(row.slope >= 0.5);
      CHECK(row.slope < 1.0);
    }
  }
}

TEST_CASE("density limits") {
  const DensityLimit n0 = density_limit_pfin(Submonoid());
  CHECK(n0.atoms == Rational{1, 2});
  CHECK(n0.printed_formula == Rational{1, 4});
  const DensityLimit l23 = density_limit_pfin(Submonoid::from_generators({2, 3}));
  CHECK(l23.atoms == Rational{11, 16});
  CHECK(l23.printed_formula == Rational{3, 16});
  CHECK(l23.d_S == 4);
  const DensityLimit l25 = density_limit_pfin(Submonoid::from_generators({2, 5}));
  CHECK(l25.atoms == Rational{47, 64});
  CHECK(l25.printed_formula == Rational{1, 4});
  CHECK(l25.d_S == 8);

  for (const std::vector<int>& gens : std::vector<std::vector<int>>{{1}, {2, 3}, {2, 5}, {3, 4, 5}, {3, 5}, {4, 5, 7}}) {
    const Submonoid s = Submonoid::from_generators(std::span<const Element>(std::vector<Element>(gens.begin(), gens.end())));
    const DensityLimit l = density_limit_pfin(s);
    CAPTURE(s.to_string());
    CHECK(l.union_count == oracle_union(gens, static_cast<int>(l.d_S)));
    CHECK(l.atoms == Rational::make(static_cast<std::int64_t>((std::uint64_t{1} << l.window) - l.union_count),
                                    static_cast<std::int64_t>(std::uint64_t{1} << l.window)));
    if (s.is_naturals()) {
      CHECK(l.atoms == Rational{1, 2});
    } else {
      CHECK(Rational{1, 2} < l.atoms);
      CHECK(l.atoms < Rational{1, 1});
    }
  }
}

TEST_CASE("singleton-shift class at a fixed maximum") {
  // Sets with max M whose lower part sits inside a + S for an atom a. Above
  // d_S the condition is automatic, so the fraction is exact for M > d_S.
  for (const std::vector<int>& gens : std::vector<std::vector<int>>{{2, 3}, {2, 5}, {3, 4}}) {
    const Submonoid s = Submonoid::from_generators(std::span<const Element>(std::vector<Element>(gens.begin(), gens.end())));
    const DensityLimit l = density_limit_pfin(s);
    const int m = static_cast<int>(l.d_S) + 4;
    const auto in = oracle::monoid_table(gens, m);
    const auto atoms = oracle::monoid_data(gens).atoms;
    std::vector<int> below;
    for (int x = 0; x < m; ++x)
      if (in[x]) below.push_back(x);
    std::uint64_t hit = 0;
    for (const oracle::Set& low : oracle::subsets(below)) {
      oracle::Set a = low;
      a.insert(m);
      bool shifted = false;
      for (int t : atoms) {
        bool ok = true;
        for (int x : a) ok = ok && x >= t && in[x - t];
        shifted = shifted || ok;
      }
      hit += shifted ? 1 : 0;
    }
    CAPTURE(s.to_string());
    CHECK(Rational::make(static_cast<std::int64_t>(hit), static_cast<std::int64_t>(std::uint64_t{1} << below.size())) ==
          l.non_atoms);
  }
}
