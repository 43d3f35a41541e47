#include <doctest.h>

#include <algorithm>

#include "powmon/error.hpp"
#include "powmon/factorization.hpp"
#include "support.hpp"

using namespace powmon;

namespace {

const Ambient kN0 = Ambient::restricted();

std::set<oracle::Set> as_oracle(const std::vector<FiniteSet>& v) {
  std::set<oracle::Set> out;
  for (const FiniteSet& s : v) out.insert(to_oracle(s));
  return out;
}

std::set<std::vector<oracle::Set>> as_oracle(const FactorizationSet& z) {
  std::set<std::vector<oracle::Set>> out;
  for (const Factorization& f : z.items) {
    std::vector<oracle::Set> parts;
    for (const FiniteSet& p : f.parts) parts.push_back(to_oracle(p));
    std::sort(parts.begin(), parts.end());
    out.insert(parts);
  }
  return out;
}

// Unrestricted divisors of A over N_0 by scanning every pair of subsets of [0, max A].
std::set<oracle::Set> unrestricted_divisors(const oracle::Set& a) {
  const int mx = *a.rbegin();
  std::vector<int> pool;
  for (int i = 0; i <= mx; ++i) pool.push_back(i);
  const auto subs = oracle::subsets(pool);
  std::set<oracle::Set> out;
  for (const auto& b : subs) {
    if (b.empty()) continue;
    for (const auto& c : subs) {
      if (!c.empty() && oracle::sum(b, c) == a) {
        out.insert(b);
        break;
      }
    }
  }
  return out;
}

bool has_part_counts(const FactorizationSet& z, const std::vector<FiniteSet>& parts) {
  Factorization want{parts};
  std::sort(want.parts.begin(), want.parts.end(), std::greater<>());
  return std::find(z.items.begin(), z.items.end(), want) != z.items.end();
}

}  // namespace

TEST_CASE("divides examples") {
  const FiniteSet six = FiniteSet::interval(0, 6);
  const auto c = divides(FiniteSet{0, 2, 3}, six, kN0);
  REQUIRE(c);
  CHECK(*c == FiniteSet{0, 1, 3});
  CHECK_FALSE(divides(FiniteSet{0, 1}, FiniteSet{0, 2, 3}, kN0));
  const auto self = divides(six, six, kN0);
  REQUIRE(self);
  CHECK(*self == FiniteSet{0});
  // restricted ambient over <2,3> rejects 1 in the complement
  CHECK_FALSE(divides(FiniteSet{0, 2}, FiniteSet{0, 2, 3}, Ambient::restricted(Submonoid::from_generators({2, 3}))));
  // unrestricted: translates divide
  const auto t = divides(FiniteSet{3, 4}, FiniteSet{5, 6, 7}, Ambient::unrestricted());
  REQUIRE(t);
  CHECK(sumset(FiniteSet{3, 4}, *t) == FiniteSet{5, 6, 7});
}

TEST_CASE("divisors examples") {
  CHECK(divisors(FiniteSet{0, 1, 2}, kN0) ==
        std::vector<FiniteSet>{FiniteSet{0}, FiniteSet{0, 1}, FiniteSet{0, 1, 2}});
  // {0,2} + C always picks up max C + 2 or misses 1
  CHECK_FALSE(divides(FiniteSet{0, 2}, FiniteSet{0, 1, 2}, kN0));
  CHECK(divisors(FiniteSet{0}, kN0) == std::vector<FiniteSet>{FiniteSet{0}});
  CHECK(divisor_count(FiniteSet{0, 1, 3}, kN0) == 2);
}

TEST_CASE("atoms") {
  CHECK(is_atom(FiniteSet{0, 2}, kN0).atom);
  const AtomCheck c = is_atom(FiniteSet{0, 1, 2}, kN0);
  CHECK_FALSE(c.atom);
  REQUIRE(c.certificate);
  CHECK(c.certificate->first == FiniteSet{0, 1});
  CHECK(c.certificate->second == FiniteSet{0, 1});
  CHECK(is_atom(FiniteSet{0, 1, 7}, kN0).atom);
  CHECK_FALSE(is_atom(FiniteSet{0, 2, 4}, kN0).atom);
  CHECK_THROWS_AS(is_atom(FiniteSet{0}, kN0), DomainError);
  CHECK_THROWS_AS(is_atom(FiniteSet{1, 2}, kN0), DomainError);
  const Ambient u = Ambient::unrestricted();
  CHECK(is_atom(FiniteSet{1}, u).atom);
  CHECK_FALSE(is_atom(FiniteSet{2}, u).atom);
  CHECK_FALSE(is_atom(FiniteSet{1, 2}, u).atom);
  CHECK(is_atom(FiniteSet{0, 2}, u).atom);
  const Ambient u25 = Ambient::unrestricted(Submonoid::from_generators({2, 5}));
  CHECK(is_atom(FiniteSet{5}, u25).atom);
  CHECK_FALSE(is_atom(FiniteSet{7}, u25).atom);
  CHECK_THROWS_AS(is_atom(FiniteSet{3}, u25), DomainError);
}

TEST_CASE("factorizations of [0,6]") {
  const FactorizationSet z = factorizations(FiniteSet::interval(0, 6), kN0);
  CHECK(z.complete);
  CHECK(z.items.size() == 16);
  CHECK(has_part_counts(z, {FiniteSet{0, 2, 3}, FiniteSet{0, 1, 3}}));
  CHECK(has_part_counts(z, std::vector<FiniteSet>(6, FiniteSet{0, 1})));
  const LengthSet l = length_set(z);
  CHECK(l.lengths == std::vector<std::uint32_t>{2, 3, 4, 5, 6});
  CHECK(l.delta == std::vector<std::uint32_t>{1});
  const std::uint32_t c = catenary_degree(z);
  CHECK(c == 2);
  CHECK(c <= l.max());
  for (const Factorization& f : z.items) {
    CHECK(f.sum() == FiniteSet::interval(0, 6));
    CHECK(factorization_distance(f, f) == 0);
    for (const FiniteSet& p : f.parts) CHECK(is_atom(p, kN0).atom);
  }
}

TEST_CASE("small factorization examples") {
  const FactorizationSet a = factorizations(FiniteSet{0, 1}, kN0);
  REQUIRE(a.items.size() == 1);
  CHECK(a.items[0].parts == std::vector<FiniteSet>{FiniteSet{0, 1}});
  const FactorizationSet b = factorizations(FiniteSet{0, 2, 4}, kN0);
  REQUIRE(b.items.size() == 1);
  CHECK(b.items[0].length() == 2);
  CHECK(length_set(FiniteSet{0, 2}, kN0).lengths == std::vector<std::uint32_t>{1});
  CHECK(length_set(FiniteSet{0}, kN0).lengths == std::vector<std::uint32_t>{0});
  CHECK(catenary_degree(FiniteSet{0, 2}, kN0) == 0);
  const Factorization z{{FiniteSet{0, 1}, FiniteSet{0, 1}}};
  const Factorization w{{FiniteSet{0, 1, 2}, FiniteSet{0, 2}, FiniteSet{0, 1}}};
  CHECK(factorization_distance(z, w) == 2);
  CHECK(factorization_distance(w, z) == 2);
}

TEST_CASE("budget marks results incomplete") {
  Budget tiny;
  tiny.max_nodes = 5;
  const FactorizationSet z = factorizations(FiniteSet::interval(0, 9), kN0, tiny);
  CHECK_FALSE(z.complete);
  for (const Factorization& f : z.items) CHECK(f.sum() == FiniteSet::interval(0, 9));
  CHECK_THROWS_AS(length_set(FiniteSet::interval(0, 9), kN0, tiny), BudgetExceeded);
  CHECK_THROWS_AS(catenary_degree(z), DomainError);
}

TEST_CASE("restricted N_0 against the brute-force oracle") {
  for (std::uint64_t m = 1; m < (1U << 8); m += 2) {
    const FiniteSet a = from_mask(m);
    const oracle::Set o = to_oracle(a);
    CAPTURE(a.to_string());
    const auto want_divisors = oracle::divisors_restricted(o);
    CHECK(as_oracle(divisors(a, kN0)) == std::set<oracle::Set>(want_divisors.begin(), want_divisors.end()));
    if (a.is_identity()) continue;
    const AtomCheck c = is_atom(a, kN0);
    CHECK(c.atom == !oracle::genuine(o));
    if (c.certificate) {
      CHECK(sumset(c.certificate->first, c.certificate->second) == a);
      CHECK(c.certificate->first.size() >= 2);
      CHECK(c.certificate->second.size() >= 2);
    }
    if (a.max() <= 7) {
      const FactorizationSet z = factorizations(a, kN0);
      CHECK(as_oracle(z) == oracle::factorizations_restricted(o));
      const LengthSet l = length_set(z);
      CHECK((l.lengths == std::vector<std::uint32_t>{1}) == c.atom);
      CHECK(catenary_degree(z) <= l.max());
    }
    const FiniteSet b = from_mask(m & 0x2B);
    const auto want_complements = oracle::complements_restricted(to_oracle(b), o);
    CHECK(as_oracle(complements(b, a, kN0)) == std::set<oracle::Set>(want_complements.begin(), want_complements.end()));
  }
}

TEST_CASE("restricted <2,3> divisors keep both parts in S") {
  const Ambient amb = Ambient::restricted(Submonoid::from_generators({2, 3}));
  const auto s = oracle::monoid_table({2, 3}, 20);
  for (std::uint64_t m = 1; m < (1U << 10); m += 2) {
    const oracle::Set o = oracle::from_mask(m);
    if (!oracle::subset_of(o, s)) continue;
    std::set<oracle::Set> want;
    for (const oracle::Set& b : oracle::divisors_restricted(o)) {
      if (!oracle::subset_of(b, s)) continue;
      for (const oracle::Set& c : oracle::complements_restricted(b, o))
        if (oracle::subset_of(c, s)) {
          want.insert(b);
          break;
        }
    }
    CHECK(as_oracle(divisors(from_mask(m), amb)) == want);
  }
}

TEST_CASE("unrestricted N_0 divisors against the oracle") {
  const Ambient u = Ambient::unrestricted();
  for (std::uint64_t m = 1; m < (1U << 6); ++m) {
    const oracle::Set o = oracle::from_mask(m);
    CHECK(as_oracle(divisors(from_mask(m), u)) == unrestricted_divisors(o));
  }
}

TEST_CASE("unrestricted factorizations strip the minimum") {
  const Ambient u = Ambient::unrestricted();
  const FactorizationSet z = factorizations(FiniteSet{2, 3, 4}, u);
  REQUIRE(z.complete);
  REQUIRE(z.items.size() == 1);
  CHECK(z.items[0].length() == 4);
  for (const Factorization& f : z.items) CHECK(f.sum() == FiniteSet{2, 3, 4});
  const Ambient u25 = Ambient::unrestricted(Submonoid::from_generators({2, 5}));
  const FactorizationSet ten = factorizations(FiniteSet{10}, u25);
  CHECK(ten.items.size() == 2);
  CHECK(length_set(ten).lengths == std::vector<std::uint32_t>{2, 5});
}

TEST_CASE("divisibility is rev-dual and tau is rev-invariant") {
  for (std::uint64_t m = 1; m < (1U << 11); m += 2) {
    const FiniteSet a = from_mask(m);
    const FiniteSet ra = reversion(a);
    for (std::uint64_t sub = m;; sub = (sub - 1) & m) {
      if (sub & 1U) {
        const FiniteSet b = from_mask(sub);
        REQUIRE(divides(b, a, kN0).has_value() == divides(reversion(b), ra, kN0).has_value());
      }
      if (sub == 0) break;
    }
    if (a.max() <= 9) CHECK(divisor_count(a, kN0) == divisor_count(ra, kN0));
  }
}

TEST_CASE("divisor counts of n{0,1,3}") {
  const std::vector<std::uint64_t> want{2, 6, 31, 185, 1209};
  for (std::uint32_t n = 1; n <= want.size(); ++n) {
    CHECK(divisor_count(k_fold(FiniteSet{0, 1, 3}, n), kN0) == want[n - 1]);
  }
  CHECK(oracle::divisors_restricted(oracle::fold({0, 1, 3}, 2)).size() == 6);
  CHECK(oracle::divisors_restricted(oracle::fold({0, 1, 3}, 3)).size() == 31);
}

TEST_CASE("omega lower bound") {
  const OmegaWitness w = omega_lower_bound(Submonoid(), 1, 1);
  CHECK(w.bound == 3);
  REQUIRE(w.sums.size() == 1);
  const FiniteSet a11 = from_oracle({0, 1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 12});
  CHECK(w.sums[0] == a11);
  const FiniteSet c = from_oracle({0, 1, 2, 3, 4, 5, 6, 9, 10, 11});
  CHECK(sumset(FiniteSet{0, 1}, c) == a11);
  CHECK(divides(FiniteSet{0, 1}, a11, kN0));
  const OmegaWitness w2 = omega_lower_bound(Submonoid(), 1, 2);
  CHECK_FALSE(divides(FiniteSet{0, 1}, w2.sums[0], kN0));
  CHECK(w2.long_atom == FiniteSet{0, 1, 9});

  for (const Submonoid& s : {Submonoid(), Submonoid::from_generators({2, 3}), Submonoid::from_generators({2, 5}),
                             Submonoid::from_generators({3, 4, 5})}) {
    for (const Element a : s.atoms()) {
      for (std::uint32_t n = 1; n <= 5; ++n) {
        const OmegaWitness o = omega_lower_bound(s, a, n);
        CHECK(o.closed_form_ok);
        CHECK(o.divides_full_sum);
        CHECK(o.no_proper_subsum_divisible);
        CHECK(o.bound == n + 2);
      }
    }
  }
  CHECK_THROWS_AS(omega_lower_bound(Submonoid::from_generators({2, 5}), 3, 1), DomainError);
}

TEST_CASE("prime counterexamples") {
  const PrimeCheck one = prime_counterexample(FiniteSet{1}, Submonoid());
  CHECK(one.prime);
  const PrimeCheck p = prime_counterexample(FiniteSet{0, 1}, Submonoid());
  CHECK_FALSE(p.prime);
  REQUIRE(p.witness);
  const std::set<FiniteSet> got{p.witness->first, p.witness->second};
  CHECK(got == std::set<FiniteSet>{FiniteSet{0, 2, 3}, FiniteSet{0, 1, 3}});

  auto check = [](const FiniteSet& a, const Submonoid& s) {
    CAPTURE(a.to_string());
    const Ambient amb = Ambient::unrestricted(s);
    const PrimeCheck r = prime_counterexample(a, s);
    REQUIRE_FALSE(r.prime);
    REQUIRE(r.witness);
    const auto& [b, c] = *r.witness;
    CHECK(divides(a, sumset(b, c), amb));
    CHECK_FALSE(divides(a, b, amb));
    CHECK_FALSE(divides(a, c, amb));
  };
  const Submonoid s25 = Submonoid::from_generators({2, 5});
  check(FiniteSet{2}, s25);
  check(FiniteSet{0, 2, 5}, s25);
  check(FiniteSet{0, 1}, Submonoid());
  check(FiniteSet{0, 1, 3}, Submonoid());
  check(FiniteSet{2}, Submonoid());
  check(FiniteSet{0, 3, 4}, Submonoid::from_generators({3, 4}));
  check(FiniteSet{1, 3}, Submonoid());
}

TEST_CASE("strong atom refuter") {
  const StrongAtomRefutation r = strong_atom_refuter(FiniteSet{0, 1}, kN0);
  CHECK(r.n == 3);
  CHECK(r.repeated.length() == 3);
  CHECK(r.alternative != r.repeated);
  CHECK(r.alternative.sum() == FiniteSet::interval(0, 3));
  // N = 6 also admits a second factorization
  CHECK(factorizations(FiniteSet::interval(0, 6), kN0).items.size() > 1);

  const Ambient u25 = Ambient::unrestricted(Submonoid::from_generators({2, 5}));
  const StrongAtomRefutation s = strong_atom_refuter(FiniteSet{2}, u25);
  CHECK(s.n == 5);
  CHECK(s.alternative.parts == std::vector<FiniteSet>{FiniteSet{5}, FiniteSet{5}});

  const StrongAtomRefutation t = strong_atom_refuter(FiniteSet{0, 2}, kN0);
  CHECK(t.n == 3);
  CHECK(t.alternative.sum() == FiniteSet{0, 2, 4, 6});
  for (const FiniteSet& part : t.alternative.parts) CHECK(is_atom(part, kN0).atom);

  CHECK_THROWS_AS(strong_atom_refuter(FiniteSet{0, 1, 2}, kN0), DomainError);
}

TEST_CASE("length set search") {
  const auto two = search_length_set({2}, kN0);
  REQUIRE(two);
  CHECK(*two == FiniteSet{0, 1, 2});
  CHECK(length_set(*two, kN0).lengths == std::vector<std::uint32_t>{2});
  const auto l23 = search_length_set({2, 3}, kN0);
  REQUIRE(l23);
  CHECK(*l23 == FiniteSet{0, 1, 2, 3});
  CHECK(length_set(*l23, kN0).lengths == std::vector<std::uint32_t>{2, 3});
  CHECK_THROWS_AS(search_length_set({1}, kN0), DomainError);
  LengthSearchBounds small;
  small.max_element = 3;
  CHECK_FALSE(search_length_set({2, 7}, kN0, small));
}
