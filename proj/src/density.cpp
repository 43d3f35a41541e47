#include "powmon/density.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "powmon/error.hpp"
#include "powmon/factorization.hpp"
#include "split_search.hpp"

namespace powmon {

namespace {

unsigned worker_count(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs body(block) for block in [0, blocks) on `threads` workers.
template <typename F>
void parallel_blocks(std::uint64_t blocks, unsigned threads, F&& body) {
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next++; b < blocks; b = next++) body(b);
  };
  const unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));
  if (n <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool in_dec_bits(const BitVec& a) {
  if (a.popcount() < 3) return false;
  const BitVec t = a.shifted_right(a.lowest());
  if (t.highest() < 64) return in_dec(t.words()[0]);
  std::uint64_t nodes = 0;
  const BitVec all = BitVec::interval(0, t.highest());
  detail::SplitSearch<BitVec> search(t, all, all, &nodes, ~std::uint64_t{0});
  return search.run().has_value();
}

// Spreads the low bits of `index` over the positions set in `positions`.
std::uint64_t deposit(std::uint64_t index, std::uint64_t positions) {
  std::uint64_t out = 0;
  for (std::uint64_t bit = 1; positions != 0; bit <<= 1) {
    const std::uint64_t low = positions & -positions;
    if ((index & bit) != 0) out |= low;
    positions &= positions - 1;
  }
  return out;
}

constexpr std::uint64_t kBlock = 1U << 14;

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return {num / (g == 0 ? 1 : g), den / (g == 0 ? 1 : g)};
}

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

std::string to_string(DensityVariant v) {
  switch (v) {
    case DensityVariant::Restricted: return "restricted";
    case DensityVariant::AllSubsets: return "all-subsets";
    case DensityVariant::Unrestricted: return "unrestricted";
  }
  return "?";
}

std::string to_string(DensityMode m) { return m == DensityMode::Exact ? "exact" : "monte_carlo"; }

bool in_dec(std::uint64_t mask) {
  if (std::popcount(mask) < 3) return false;
  mask >>= std::countr_zero(mask);
  return split_mask(mask).has_value();
}

std::vector<std::uint64_t> decomposables_by_max(std::uint32_t n, const ExactOptions& opts) {
  if (n > opts.max_exponent || n > 63) {
    throw BudgetExceeded("exact enumeration of 2^" + std::to_string(n) + " sets exceeds the limit 2^" +
                         std::to_string(std::min<std::uint32_t>(opts.max_exponent, 63)));
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<std::vector<std::uint64_t>> partial(blocks, std::vector<std::uint64_t>(n + 1, 0));
  parallel_blocks(blocks, worker_count(opts.threads), [&](std::uint64_t b) {
    const std::uint64_t end = std::min(count, (b + 1) * kBlock);
    for (std::uint64_t i = b * kBlock; i < end; ++i) {
      const std::uint64_t mask = 1 | (i << 1);
      if (in_dec(mask)) ++partial[b][63 - std::countl_zero(mask)];
    }
  });
  std::vector<std::uint64_t> out(n + 1, 0);
  for (const auto& p : partial) {
    for (std::size_t d = 0; d <= n; ++d) out[d] += p[d];
  }
  return out;
}

DensityReport count_exact(std::uint32_t n, DensityVariant variant, const Submonoid& s, const ExactOptions& opts) {
  DensityReport r;
  r.N = n;
  r.variant = variant;
  r.monoid = s;
  r.mode = DensityMode::Exact;
  if (variant == DensityVariant::AllSubsets) {
    if (n + 1 > 64) throw BudgetExceeded("all-subsets universe above N = 63 does not fit a 64-bit count");
    const auto by_max = decomposables_by_max(n, opts);
    for (std::uint32_t d = 0; d <= n; ++d) r.decomposables += by_max[d] * (n - d + 1);
    r.total = n + 1 == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (n + 1));
    r.atoms = r.total - r.decomposables;
    r.estimate = static_cast<double>(r.decomposables) / static_cast<double>(r.total);
    return r;
  }
  if (s.is_trivial() || !s.is_numerical()) throw DomainError("density needs a numerical monoid");
  if (n > 63) throw BudgetExceeded("exact enumeration is limited to N <= 63");
  const BitVec members = s.members_up_to(n);
  const std::uint64_t universe = members.words().empty() ? 0 : members.words()[0];
  const std::uint64_t positive = universe & ~std::uint64_t{1};
  const unsigned threads = worker_count(opts.threads);

  if (variant == DensityVariant::Restricted) {
    const unsigned k = static_cast<unsigned>(std::popcount(positive));
    if (k > opts.max_exponent) {
      throw BudgetExceeded("exact enumeration of 2^" + std::to_string(k) + " sets exceeds the limit");
    }
    const std::uint64_t count = std::uint64_t{1} << k;
    const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
    std::vector<std::uint64_t> partial(blocks, 0);
    parallel_blocks(blocks, threads, [&](std::uint64_t b) {
      const std::uint64_t end = std::min(count, (b + 1) * kBlock);
      for (std::uint64_t i = b * kBlock; i < end; ++i) {
        // B, C ⊂ B + C ⊂ S, so the N_0 test decides P_fin,0(S) as well.
        if (in_dec(1 | deposit(i, positive))) ++partial[b];
      }
    });
    r.total = count;
    r.identity_count = 1;
    r.decomposables = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
    r.atoms = r.total - r.decomposables - r.identity_count;
    r.estimate = static_cast<double>(r.decomposables) / static_cast<double>(r.total);
    return r;
  }

  const unsigned k = static_cast<unsigned>(std::popcount(universe));
  if (k > opts.max_exponent) {
    throw BudgetExceeded("exact enumeration of 2^" + std::to_string(k) + " sets exceeds the limit");
  }
  const std::uint64_t count = std::uint64_t{1} << k;
  const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
  const Ambient amb = Ambient::unrestricted(s);
  std::vector<std::uint64_t> partial(blocks, 0);
  parallel_blocks(blocks, threads, [&](std::uint64_t b) {
    const std::uint64_t end = std::min(count, (b + 1) * kBlock);
    for (std::uint64_t i = std::max<std::uint64_t>(b * kBlock, 1); i < end; ++i) {
      const std::uint64_t mask = deposit(i, universe);
      if (mask == 1) continue;  // {0}
      const FiniteSet a = FiniteSet::from_bits(BitVec::from_word(mask));
      if (!is_atom(a, amb).atom) ++partial[b];
    }
  });
  r.total = count - 1;
  r.identity_count = 1;
  r.decomposables = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
  r.atoms = r.total - r.decomposables - r.identity_count;
  r.estimate = static_cast<double>(r.decomposables) / static_cast<double>(r.total);
  return r;
}

DensityReport sample_decomposable(std::uint32_t n, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw DomainError("sample_decomposable: trials must be positive");
  if (static_cast<std::uint64_t>(n) + 1 > universe_bound()) throw UniverseError("N exceeds universe bound");
  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  const std::size_t words = (static_cast<std::size_t>(n) + 1 + 63) / 64;
  const std::uint64_t tail_mask = ((n + 1) % 64 == 0) ? ~std::uint64_t{0} : ((std::uint64_t{1} << ((n + 1) % 64)) - 1);
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_blocks(chunks, worker_count(threads), [&](std::uint64_t c) {
    std::mt19937_64 rng(splitmix64(seed, c));
    const std::uint64_t end = std::min(trials, (c + 1) * kChunk);
    for (std::uint64_t t = c * kChunk; t < end; ++t) {
      if (words == 1) {
        if (in_dec(rng() & tail_mask)) ++hits[c];
        continue;
      }
      BitVec a;
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t word = rng();
        if (w + 1 == words) word &= tail_mask;
        for (std::uint64_t bits = word; bits != 0; bits &= bits - 1) a.set(w * 64 + std::countr_zero(bits));
      }
      if (in_dec_bits(a)) ++hits[c];
    }
  });
  DensityReport r;
  r.N = n;
  r.variant = DensityVariant::AllSubsets;
  r.mode = DensityMode::MonteCarlo;
  r.trials = trials;
  r.seed = seed;
  r.total = trials;
  r.decomposables = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  r.atoms = r.total - r.decomposables;
  const double p = static_cast<double>(r.decomposables) / static_cast<double>(trials);
  r.estimate = p;
  r.stderr_ = std::sqrt(p * (1 - p) / static_cast<double>(trials));
  return r;
}

GrowthReport growth_constant_bounds(std::uint32_t n_max, const ExactOptions& opts) {
  const auto by_max = decomposables_by_max(n_max, opts);
  GrowthReport g;
  std::uint64_t prev = 0;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    GrowthRow row;
    row.N = n;
    for (std::uint32_t d = 0; d <= n; ++d) row.dec += by_max[d] * (n - d + 1);
    if (row.dec > 0) row.slope = std::log2(static_cast<double>(row.dec)) / n;
    if (row.dec > 0 && prev > 0) row.step = std::log2(static_cast<double>(row.dec) / static_cast<double>(prev));
    prev = row.dec;
    g.rows.push_back(row);
  }
  return g;
}

DensityLimit density_limit_pfin(const Submonoid& s) {
  if (s.is_trivial() || !s.is_numerical()) throw DomainError("density_limit_pfin needs a numerical monoid");
  const auto& atoms = s.reduced_atoms();
  DensityLimit out;
  out.d_S = atoms.back() + s.frobenius();
  if (out.d_S > 63) throw UniverseError("density_limit_pfin: d(S) above 63 is not supported");
  const std::uint64_t window = s.members_up_to(out.d_S).words()[0];
  out.window = static_cast<std::uint32_t>(std::popcount(window));
  if (out.window > 62) throw UniverseError("density_limit_pfin: window exceeds 62 elements");
  if (atoms.size() > 24) throw BudgetExceeded("density_limit_pfin: too many atoms for inclusion-exclusion");

  std::vector<std::uint64_t> translates;
  for (Element a : atoms) translates.push_back(s.members_up_to(out.d_S).shifted_left(a).truncated(out.d_S + 1).words()[0]);

  // |∪ P(X_a)| by inclusion-exclusion over nonempty families of atoms.
  __int128 total = 0;
  const std::uint64_t families = std::uint64_t{1} << atoms.size();
  for (std::uint64_t j = 1; j < families; ++j) {
    std::uint64_t meet = ~std::uint64_t{0};
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if ((j >> i) & 1U) meet &= translates[i];
    }
    const __int128 term = static_cast<__int128>(1) << std::popcount(meet);
    total += (std::popcount(j) % 2 == 1) ? term : -term;
  }
  out.union_count = static_cast<std::uint64_t>(total);
  const std::int64_t den = std::int64_t{1} << out.window;
  out.non_atoms = Rational::make(static_cast<std::int64_t>(out.union_count), den);
  out.atoms = Rational::make(den - static_cast<std::int64_t>(out.union_count), den);
  out.printed_formula = Rational::make(static_cast<std::int64_t>(out.union_count - atoms.size()), den);

  const Rational half = Rational::make(1, 2);
  if (out.atoms < half || !(out.atoms < Rational::make(1, 1))) {
    throw VerificationFailure("density_limit_pfin: limit " + out.atoms.to_string() + " lies outside [1/2, 1)");
  }
  if (s.is_naturals() != (out.atoms == half)) {
    throw VerificationFailure("density_limit_pfin: limit equals 1/2 exactly when S = N_0, got " + out.atoms.to_string());
  }
  return out;
}

}  // namespace powmon
