#include "powmon/spectrum.hpp"

#include <algorithm>

#include "powmon/error.hpp"

namespace powmon {

namespace {

bool monoid_includes(const Submonoid& outer, const Submonoid& inner, Element scale) {
  for (Element a : inner.atoms()) {
    if (!outer.contains(static_cast<std::uint64_t>(a) * scale)) return false;
  }
  return true;
}

Submonoid add_frobenius(const Submonoid& s) {
  std::vector<Element> gens = s.reduced_atoms();
  gens.push_back(s.frobenius());
  return Submonoid::from_generators(std::span<const Element>(gens));
}

Fingerprint fingerprint_rec(const DcsDescriptor& d, std::uint32_t depth) {
  const std::vector<DcsDescriptor> kids = mdcs(d);
  Fingerprint f;
  f.count = static_cast<std::uint32_t>(kids.size());
  if (depth > 1) {
    for (const DcsDescriptor& k : kids) f.children.push_back(fingerprint_rec(k, depth - 1));
    std::sort(f.children.begin(), f.children.end());
  }
  return f;
}

}  // namespace

std::string DcsDescriptor::to_string() const {
  if (trivial) return "{{0}}";
  return "(" + std::to_string(d) + ", " + S.to_string() + ", " + T.to_string() + ")";
}

DcsDescriptor dcs_of(const FiniteSet& a) {
  const FiniteSet base = a.contains(0) ? a : FiniteSet::from_bits(a.bits().shifted_right(a.min()));
  if (base.is_identity()) return DcsDescriptor::trivial_descriptor();
  const Normalized n = normalize(base);
  return {n.d, span(n.core), span(reversion(n.core)), false};
}

bool dcs_contains(const DcsDescriptor& d, const FiniteSet& b) {
  if (!b.contains(0)) throw DomainError("dcs_contains: " + b.to_string() + " does not contain 0");
  if (b.is_identity()) return true;
  if (d.trivial) return false;
  if (set_gcd(b) % d.d != 0) return false;
  const FiniteSet core = d.d == 1 ? b : FiniteSet::from_bits([&] {
    BitVec out;
    b.bits().for_each([&](std::size_t x) { out.set(x / d.d); });
    return out;
  }());
  return d.S.contains_all(core) && d.T.contains_all(reversion(core));
}

bool dcs_includes(const DcsDescriptor& outer, const DcsDescriptor& inner) {
  if (inner.trivial) return true;
  if (outer.trivial) return false;
  if (inner.d % outer.d != 0) return false;
  const Element k = inner.d / outer.d;
  return monoid_includes(outer.S, inner.S, k) && monoid_includes(outer.T, inner.T, k);
}

bool is_full(const FiniteSet& a) {
  if (!a.contains(0)) throw DomainError("is_full: " + a.to_string() + " does not contain 0");
  return a.contains(1) && a.contains(a.max() - 1);
}

std::vector<DcsDescriptor> mdcs(const DcsDescriptor& d) {
  if (d.trivial) throw DomainError("the trivial submonoid has no maximal divisor-closed submonoids");
  std::vector<DcsDescriptor> out;
  for (const Submonoid& s : maximal_submonoids(d.S)) out.push_back({d.d, s, d.T, false});
  for (const Submonoid& t : maximal_submonoids(d.T)) out.push_back({d.d, d.S, t, false});
  return out;
}

Fingerprint mdcs_fingerprint(const DcsDescriptor& d, std::uint32_t depth, std::uint32_t max_depth) {
  if (depth == 0) throw DomainError("fingerprint depth must be positive");
  if (depth > max_depth) {
    throw BudgetExceeded("fingerprint depth " + std::to_string(depth) + " exceeds the limit " +
                         std::to_string(max_depth));
  }
  return fingerprint_rec(d, depth);
}

FiniteSet dcs_generator(const DcsDescriptor& d) {
  if (d.trivial) throw DomainError("dcs_generator: the trivial descriptor is generated by {0}");
  const auto& as = d.S.reduced_atoms();
  const auto& at = d.T.reduced_atoms();
  // M = F(S) + F(T) + max A(S) + max A(T) + 1 always passes the checks below.
  const Element limit = d.S.frobenius() + d.T.frobenius() + as.back() + at.back() + 1;
  for (Element m = as.back(); m <= limit; ++m) {
    if (!d.S.contains(m)) continue;
    bool ok = true;
    for (Element t : at) ok = ok && t <= m && d.S.contains(m - t);
    for (Element s : as) ok = ok && d.T.contains(m - s);
    if (!ok) continue;
    BitVec bits;
    bits.set(0);
    bits.set(m);
    for (Element s : as) bits.set(s);
    for (Element t : at) bits.set(m - t);
    const FiniteSet a = FiniteSet::from_bits(std::move(bits));
    if (span(a) == d.S && span(reversion(a)) == d.T) return d.d == 1 ? a : dilate(a, d.d);
  }
  throw VerificationFailure("dcs_generator: no generator found for " + d.to_string());
}

std::uint32_t noncancellative_threshold(const DcsDescriptor& d) {
  if (d.trivial) throw DomainError("the trivial submonoid has no noncancellative witnesses");
  return std::max(d.S.frobenius(), d.T.frobenius()) + 1;
}

NoncancellativeWitness noncancellative_witnesses(const DcsDescriptor& desc, std::uint32_t n) {
  NoncancellativeWitness w;
  w.n_star = noncancellative_threshold(desc);
  w.n = n == 0 ? w.n_star : n;
  if (w.n < w.n_star) {
    throw DomainError("noncancellative_witnesses: n = " + std::to_string(w.n) + " is below n* = " +
                      std::to_string(w.n_star));
  }
  const Element d = desc.d;
  const Element k = w.n;
  if (static_cast<std::uint64_t>(8) * d * k > universe_bound()) throw UniverseError("witness sets exceed universe bound");
  auto block = [&](Element lo, Element hi, Element top) {
    BitVec bits;
    bits.set(0);
    for (Element x = lo; x <= hi; ++x) bits.set(static_cast<std::size_t>(d) * x);
    bits.set(static_cast<std::size_t>(d) * top);
    return FiniteSet::from_bits(std::move(bits));
  };
  w.B = block(k, 3 * k, 4 * k);
  w.C = FiniteSet{0, 2 * d * k};
  w.D = FiniteSet{0, d * k};
  w.F = block(k, 5 * k, 6 * k);
  w.A = without(w.B, 2 * d * k);

  w.members_ok = true;
  for (const FiniteSet* s : {&w.B, &w.C, &w.D, &w.F, &w.A}) w.members_ok = w.members_ok && dcs_contains(desc, *s);
  const FiniteSet bc = sumset(w.B, w.C);
  w.transfer_ok = bc == w.F && sumset(sumset(w.B, w.D), w.D) == w.F;
  w.doubled = sumset(w.B, w.B);
  w.torsion_ok = w.A != w.B && sumset(w.A, w.A) == w.doubled && w.doubled == block(k, 7 * k, 8 * k);
  if (!w.members_ok || !w.transfer_ok || !w.torsion_ok) {
    throw VerificationFailure("noncancellative_witnesses: identities fail for " + desc.to_string() +
                              " at n = " + std::to_string(w.n));
  }
  return w;
}

DcsDescriptor chain_descriptor(std::uint32_t n) {
  if (n == 0) throw DomainError("chain_descriptor: n must be positive");
  std::vector<Element> gens;
  for (Element x = n; x < 2 * n; ++x) gens.push_back(x);
  if (n == 1) gens = {1};
  return {1, Submonoid::from_generators(std::span<const Element>(gens)), Submonoid(), false};
}

std::optional<DcsDescriptor> parent(const DcsDescriptor& d) {
  if (d.trivial) return DcsDescriptor::full();
  if (!d.S.is_naturals()) return DcsDescriptor{d.d, add_frobenius(d.S), d.T, false};
  if (!d.T.is_naturals()) return DcsDescriptor{d.d, d.S, add_frobenius(d.T), false};
  if (d.d != 1) return DcsDescriptor::full();
  return std::nullopt;
}

}  // namespace powmon
