#include "powmon/sumset_structure.hpp"

#include <algorithm>
#include <vector>

#include "powmon/error.hpp"

namespace powmon {

namespace {

struct Core {
  Element d;
  FiniteSet core;
};

Core reduce(const FiniteSet& a, const char* op) {
  if (!a.contains(0)) throw DomainError(std::string(op) + ": set must contain 0 (normalize first)");
  if (a.is_identity()) throw DomainError(std::string(op) + ": set must differ from {0}");
  const Normalized n = normalize(a);
  return {n.d, n.core};
}

// {x in [0, n·max] : x in S and n·max − x in T} for a reduced core.
FiniteSet core_formula(const FiniteSet& core, const Submonoid& s, const Submonoid& t, std::uint32_t n) {
  const std::size_t top = static_cast<std::size_t>(core.max()) * n;
  if (top > universe_bound()) throw UniverseError("n-fold sumset exceeds universe bound");
  BitVec out;
  for (std::size_t x = 0; x <= top; ++x) {
    if (s.contains(x) && t.contains(top - x)) out.set(x);
  }
  return FiniteSet::from_bits(std::move(out));
}

std::uint32_t core_n_star(const FiniteSet& core, const Submonoid& s, const Submonoid& t, const NStarOptions& opts) {
  const std::uint32_t window = opts.window != 0 ? opts.window : core.max() + 2;
  const std::uint32_t cap = opts.max_n != 0 ? opts.max_n : universe_bound() / core.max();
  std::uint32_t candidate = 1;
  FiniteSet fold = core;
  for (std::uint32_t n = 1; n <= cap; ++n) {
    if (n > 1) fold = sumset(fold, core);
    if (fold != core_formula(core, s, t, n)) {
      candidate = n + 1;
    } else if (n >= candidate + window) {
      return candidate;
    }
  }
  throw BudgetExceeded("n_star: formula not stable up to n = " + std::to_string(cap));
}

Element max_gap(const FiniteSet& b) {
  const auto gaps = delta_set(b);
  return gaps.empty() ? 0 : gaps.back();
}

}  // namespace

std::uint32_t n_star(const FiniteSet& a, const NStarOptions& opts) { return structural_form(a, opts).n_star; }

StructuralForm structural_form(const FiniteSet& a, const NStarOptions& opts) {
  const Core c = reduce(a, "n_star");
  StructuralForm f;
  f.d = c.d;
  f.S = span(c.core);
  f.T = span(reversion(c.core));
  f.n_star = core_n_star(c.core, f.S, f.T, opts);
  return f;
}

FiniteSet nfold_formula(const FiniteSet& a, std::uint32_t n) {
  if (n == 0) return FiniteSet();
  const Core c = reduce(a, "nfold_formula");
  const FiniteSet out = core_formula(c.core, span(c.core), span(reversion(c.core)), n);
  return c.d == 1 ? out : dilate(out, c.d);
}

FiniteSet structural_nfold(const FiniteSet& a, std::uint32_t n) {
  const std::uint32_t threshold = n_star(a);
  if (n < threshold) {
    throw DomainError("structural_nfold: n = " + std::to_string(n) + " is below n_star = " +
                      std::to_string(threshold));
  }
  return nfold_formula(a, n);
}

std::optional<std::uint32_t> divisor_witness_threshold(const FiniteSet& b, const FiniteSet& a) {
  const Core c = reduce(a, "divisor_witness");
  if (c.d != 1) throw DomainError("divisor_witness: gcd(A) must be 1");
  const Submonoid s = span(a);
  const Submonoid t = span(reversion(a));
  if (!b.contains(0) || !s.contains_all(b) || !t.contains_all(reversion(b))) return std::nullopt;
  const std::uint32_t ns = core_n_star(a, s, t, {});
  // max Δ(B) < N·max A − F(S) − F(T) − max B
  const long long rhs_base = static_cast<long long>(s.frobenius()) + t.frobenius() + b.max() + max_gap(b);
  std::uint32_t n = ns;
  while (static_cast<long long>(n) * a.max() <= rhs_base) ++n;
  return n;
}

FiniteSet divisor_witness(const FiniteSet& b, const FiniteSet& a, std::uint32_t big_n) {
  const Core c = reduce(a, "divisor_witness");
  if (c.d != 1) throw DomainError("divisor_witness: gcd(A) must be 1");
  const Submonoid s = span(a);
  const Submonoid t = span(reversion(a));
  if (!b.contains(0)) throw DomainError("divisor_witness: B must contain 0");
  if (!s.contains_all(b)) throw DomainError("divisor_witness: B is not inside <A>");
  if (!t.contains_all(reversion(b))) throw DomainError("divisor_witness: rev(B) is not inside <rev(A)>");
  const std::uint32_t ns = core_n_star(a, s, t, {});
  if (big_n < ns) {
    throw DomainError("divisor_witness: N = " + std::to_string(big_n) + " is below n_star = " + std::to_string(ns));
  }
  const long long top = static_cast<long long>(big_n) * a.max();
  const long long fs = s.frobenius();
  const long long ft = t.frobenius();
  const long long bmax = b.max();
  if (!(static_cast<long long>(max_gap(b)) < top - fs - ft - bmax)) {
    throw DomainError("divisor_witness: gap condition max Δ(B) < N·max A − F(S) − F(T) − max B fails");
  }

  // C = F ∪ (F(S), aN − F(T) − b) ∪ (aN − b − G) with F = S ∩ [0, F(S)], G = T ∩ [0, F(T)].
  BitVec cbits = s.members_up_to(static_cast<std::size_t>(fs));
  for (long long x = fs + 1; x < top - ft - bmax; ++x) cbits.set(static_cast<std::size_t>(x));
  for (long long g = 0; g <= ft; ++g) {
    if (t.contains(static_cast<std::uint64_t>(g)) && top - bmax - g >= 0) {
      cbits.set(static_cast<std::size_t>(top - bmax - g));
    }
  }
  FiniteSet cset = FiniteSet::from_bits(std::move(cbits));
  if (sumset(b, cset) != k_fold(a, big_n)) {
    throw VerificationFailure("divisor_witness: B + C != NA for B = " + b.to_string() + ", A = " + a.to_string() +
                              ", N = " + std::to_string(big_n));
  }
  return cset;
}

CancellationWitness cancellation_counterexample(const FiniteSet& a) {
  if (a.size() < 2) throw DomainError("cancellation_counterexample: singletons are cancellative");
  const Normalized norm = normalize(a);
  const FiniteSet& core = norm.core;
  const Submonoid s = span(core);
  const Submonoid t = span(reversion(core));
  const std::uint32_t start = std::max<std::uint32_t>(core_n_star(core, s, t, {}), 2);
  const std::uint32_t cap = universe_bound() / core.max();
  for (std::uint32_t n = start; n < cap; ++n) {
    const FiniteSet fold = k_fold(core, n);
    const FiniteSet next = sumset(fold, core);
    const FiniteSet b_core = without(fold, core.max());
    if (sumset(core, b_core) != next) continue;

    CancellationWitness w;
    w.n = n;
    w.b = translate(dilate(b_core, norm.d), n * norm.shift);
    w.n_fold = k_fold(a, n);
    w.next_fold = k_fold(a, n + 1);
    if (sumset(a, w.b) != w.next_fold || w.b == w.n_fold || !w.b.bits().is_subset_of(w.n_fold.bits())) {
      throw VerificationFailure("cancellation_counterexample: witness failed re-verification for " + a.to_string());
    }
    return w;
  }
  throw BudgetExceeded("cancellation_counterexample: no n found below the universe bound");
}

GrothendieckClass grothendieck_class(const FiniteSet& a, const FiniteSet& b, GrothendieckVariant variant) {
  GrothendieckClass c;
  c.max_diff = static_cast<long long>(a.max()) - b.max();
  if (variant == GrothendieckVariant::Restricted) {
    if (!a.contains(0) || !b.contains(0)) {
      throw DomainError("restricted Grothendieck class needs both sets to contain 0");
    }
  } else {
    c.min_diff = static_cast<long long>(a.min()) - b.min();
  }
  return c;
}

std::optional<FiniteSet> grothendieck_witness(const FiniteSet& a, const FiniteSet& b, const FiniteSet& c,
                                              const FiniteSet& d, GrothendieckVariant variant, const Submonoid& s) {
  if (variant == GrothendieckVariant::Restricted) {
    for (const FiniteSet* x : {&a, &b, &c, &d}) {
      if (!x->contains(0)) throw DomainError("restricted variant needs sets containing 0");
    }
  }
  const FiniteSet lhs = sumset(a, d);
  const FiniteSet rhs = sumset(c, b);
  const Element bound = 2 * (a.max() + b.max() + c.max() + d.max()) + s.frobenius() + 2;
  if (variant == GrothendieckVariant::Restricted) {
    for (Element y = 0; y <= bound; ++y) {
      const FiniteSet e = FiniteSet::from_bits(s.members_up_to(y));
      if (sumset(lhs, e) == sumset(rhs, e)) return e;
    }
    return std::nullopt;
  }
  for (Element x = 0; x <= bound; ++x) {
    if (!s.contains(x)) continue;
    for (Element y = x; y <= bound; ++y) {
      if (!s.contains(y)) break;
      const FiniteSet e = FiniteSet::interval(x, y);
      if (sumset(lhs, e) == sumset(rhs, e)) return e;
    }
  }
  return std::nullopt;
}

}  // namespace powmon
