#include "powmon/factorization.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "powmon/error.hpp"
#include "split_search.hpp"

namespace powmon {

namespace {

// S ∩ [0, limit] as a mask; cheap for N_0.
BitVec monoid_mask(const Submonoid& s, std::size_t limit) { return s.members_up_to(limit); }

// {x : x + shift ∈ S} ∩ [0, limit].
BitVec shifted_monoid_mask(const Submonoid& s, std::size_t shift, std::size_t limit) {
  return monoid_mask(s, limit + shift).shifted_right(shift);
}

void tick(std::uint64_t& nodes, const Budget& budget) {
  if (++nodes > budget.max_nodes) throw BudgetExceeded("search exceeded its node budget of " + std::to_string(budget.max_nodes));
}

FiniteSet sum_bits(const FiniteSet& b, const BitVec& c) {
  BitVec out;
  b.bits().for_each([&](std::size_t x) { out.or_shifted(c, x); });
  return FiniteSet::from_bits(std::move(out));
}

std::optional<std::pair<BitVec, BitVec>> find_split(const BitVec& target, const BitVec& b_allowed,
                                                    const BitVec& c_allowed, std::uint64_t& nodes,
                                                    const Budget& budget) {
  if (target.highest() < 64) {
    const detail::Bits64 t{target.words().empty() ? 0 : target.words()[0]};
    const detail::Bits64 ba{b_allowed.words().empty() ? 0 : b_allowed.words()[0]};
    const detail::Bits64 ca{c_allowed.words().empty() ? 0 : c_allowed.words()[0]};
    detail::SplitSearch<detail::Bits64> search(t, ba, ca, &nodes, budget.max_nodes);
    auto r = search.run();
    if (!r) return std::nullopt;
    return std::make_pair(BitVec::from_word(r->first.w), BitVec::from_word(r->second.w));
  }
  detail::SplitSearch<BitVec> search(target, b_allowed, c_allowed, &nodes, budget.max_nodes);
  return search.run();
}

// Two non-units of the ambient summing to A, or nullopt when A is an atom.
std::optional<SetPair> decompose(const FiniteSet& a, const Ambient& amb, std::uint64_t& nodes,
                                 const Budget& budget) {
  const Submonoid& s = amb.monoid;
  if (amb.kind == AmbientKind::Restricted) {
    if (a.size() <= 2) return std::nullopt;
    const BitVec all = BitVec::interval(0, a.max());
    auto r = find_split(a.bits(), all, all, nodes, budget);
    if (!r) return std::nullopt;
    return SetPair{FiniteSet::from_bits(std::move(r->first)), FiniteSet::from_bits(std::move(r->second))};
  }

  // Unrestricted: a singleton factor {k}, k an atom of S, first.
  for (Element k : s.atoms()) {
    if (k > a.min()) break;
    if (a.size() == 1 && a.min() == k) continue;
    const FiniteSet rest = FiniteSet::from_bits(a.bits().shifted_right(k));
    if (s.contains_all(rest)) return SetPair{FiniteSet::singleton(k), rest};
  }
  if (a.size() <= 2) return std::nullopt;

  const Element m = a.min();
  const Element top = a.max() - m;
  const BitVec target = a.bits().shifted_right(m);
  for (Element beta = 0; beta <= m; ++beta) {
    const Element gamma = m - beta;
    if (!s.contains(beta) || !s.contains(gamma)) continue;
    tick(nodes, budget);
    const BitVec b_allowed = shifted_monoid_mask(s, beta, top);
    const BitVec c_allowed = shifted_monoid_mask(s, gamma, top);
    auto r = find_split(target, b_allowed, c_allowed, nodes, budget);
    if (r) {
      return SetPair{translate(FiniteSet::from_bits(std::move(r->first)), beta),
                     translate(FiniteSet::from_bits(std::move(r->second)), gamma)};
    }
  }
  return std::nullopt;
}

bool atom_unchecked(const FiniteSet& a, const Ambient& amb, std::uint64_t& nodes, const Budget& budget) {
  if (amb.kind == AmbientKind::Unrestricted && a.size() == 1) {
    const auto atoms = amb.monoid.atoms();
    return std::binary_search(atoms.begin(), atoms.end(), a.min());
  }
  return !decompose(a, amb, nodes, budget).has_value();
}

// Enumerates every divisor of A into `out`.
class DivisorWalk {
 public:
  DivisorWalk(const FiniteSet& a, const Ambient& amb, const Budget& budget, std::uint64_t& nodes,
              std::vector<FiniteSet>& out)
      : a_(a), amb_(amb), budget_(budget), nodes_(nodes), out_(out) {
    s_mask_ = monoid_mask(amb.monoid, a.max());
  }

  void run() {
    const Element m = a_.min();
    const Element beta_max = amb_.kind == AmbientKind::Restricted ? 0 : m;
    for (Element beta = 0; beta <= beta_max; ++beta) {
      const Element gamma = m - beta;
      if (!amb_.monoid.contains(beta) || !amb_.monoid.contains(gamma)) continue;
      gamma_ = gamma;
      pool_ = a_.bits().shifted_right(gamma) & s_mask_;
      BitVec b;
      b.set(beta);
      const BitVec c = a_.bits().shifted_right(beta) & s_mask_;
      visit(b, c, beta);
    }
  }

 private:
  void visit(const BitVec& b, const BitVec& c, std::size_t last) {
    tick(nodes_, budget_);
    BitVec sum;
    b.for_each([&](std::size_t x) { sum.or_shifted(c, x); });
    if (!a_.bits().truncated(last + gamma_ + 1).is_subset_of(sum)) return;
    if (sum == a_.bits()) out_.push_back(FiniteSet::from_bits(b));
    for (std::size_t x = pool_.next_set(last + 1); x != BitVec::npos; x = pool_.next_set(x + 1)) {
      BitVec c2 = c & a_.bits().shifted_right(x);
      if (c2.empty()) break;  // larger x only shrink c further
      BitVec b2 = b;
      b2.set(x);
      visit(b2, c2, x);
    }
  }

  const FiniteSet& a_;
  const Ambient& amb_;
  const Budget& budget_;
  std::uint64_t& nodes_;
  std::vector<FiniteSet>& out_;
  BitVec s_mask_;
  BitVec pool_;
  std::size_t gamma_ = 0;
};

class ComplementWalk {
 public:
  ComplementWalk(const FiniteSet& b, const FiniteSet& a, const BitVec& cmax, const Budget& budget,
                 std::uint64_t& nodes, std::vector<FiniteSet>& out)
      : b_(b), a_(a), budget_(budget), nodes_(nodes), out_(out) {
    cmax.for_each([&](std::size_t x) { pool_.push_back(x); });
  }

  void run() {
    if (pool_.empty()) return;
    visit(0, BitVec(), BitVec());
  }

 private:
  void visit(std::size_t i, const BitVec& chosen, const BitVec& covered) {
    tick(nodes_, budget_);
    if (i > 0 && !a_.bits().truncated(pool_[i - 1] + b_.min() + 1).is_subset_of(covered)) return;
    if (i == pool_.size()) {
      if (covered == a_.bits()) out_.push_back(FiniteSet::from_bits(chosen));
      return;
    }
    BitVec with = chosen;
    with.set(pool_[i]);
    BitVec cov = covered;
    cov.or_shifted(b_.bits(), pool_[i]);
    visit(i + 1, with, cov);
    visit(i + 1, chosen, covered);
  }

  const FiniteSet& b_;
  const FiniteSet& a_;
  const Budget& budget_;
  std::uint64_t& nodes_;
  std::vector<FiniteSet>& out_;
  std::vector<std::size_t> pool_;
};

std::vector<FiniteSet> complements_impl(const FiniteSet& b, const FiniteSet& a, const Ambient& amb,
                                        const Budget& budget, std::uint64_t& nodes) {
  std::vector<FiniteSet> out;
  auto cmax = max_complement(b, a, amb);
  if (!cmax || sum_bits(b, cmax->bits()) != a) return out;
  ComplementWalk walk(b, a, cmax->bits(), budget, nodes, out);
  walk.run();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FiniteSet> divisors_impl(const FiniteSet& a, const Ambient& amb, const Budget& budget,
                                     std::uint64_t& nodes) {
  std::vector<FiniteSet> out;
  DivisorWalk walk(a, amb, budget, nodes, out);
  walk.run();
  std::sort(out.begin(), out.end());
  return out;
}

Factorization canonical(std::vector<FiniteSet> parts) {
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Factorization{std::move(parts)};
}

class FactorizationEngine {
 public:
  FactorizationEngine(const Ambient& amb, const Budget& budget) : amb_(amb), budget_(budget) {}

  std::uint64_t nodes() const { return nodes_; }

  bool atom(const FiniteSet& a) {
    auto it = atom_memo_.find(a);
    if (it != atom_memo_.end()) return it->second;
    const bool r = atom_unchecked(a, amb_, nodes_, budget_);
    atom_memo_.emplace(a, r);
    return r;
  }

  // Every factorization of `a`; throws BudgetExceeded.
  const std::vector<Factorization>& all(const FiniteSet& a) {
    auto it = memo_.find(a);
    if (it != memo_.end()) return it->second;
    std::set<Factorization> acc;
    if (a.is_identity()) acc.insert(Factorization{});
    for_each_step(a, [&](const FiniteSet& u, const Factorization& rest) {
      std::vector<FiniteSet> parts = rest.parts;
      parts.push_back(u);
      acc.insert(canonical(std::move(parts)));
    });
    return memo_.emplace(a, std::vector<Factorization>(acc.begin(), acc.end())).first->second;
  }

  // Calls f(U, z) for every atom U | a taken as the largest part, every
  // complement C and every z in Z(C) whose parts are all <= U.
  template <typename F>
  void for_each_step(const FiniteSet& a, F&& f) {
    if (a.is_identity()) return;
    for (const FiniteSet& u : divisors_impl(a, amb_, budget_, nodes_)) {
      if (u.is_identity() || !atom(u)) continue;
      for (const FiniteSet& c : complements_impl(u, a, amb_, budget_, nodes_)) {
        for (const Factorization& z : all(c)) {
          tick(nodes_, budget_);
          if (!z.parts.empty() && u < z.parts.front()) continue;
          f(u, z);
        }
      }
    }
  }

 private:
  const Ambient& amb_;
  const Budget& budget_;
  std::uint64_t nodes_ = 0;
  std::map<FiniteSet, bool> atom_memo_;
  std::map<FiniteSet, std::vector<Factorization>> memo_;
};

}  // namespace

// ---------------------------------------------------------------------------

bool Ambient::contains(const FiniteSet& a) const {
  if (kind == AmbientKind::Restricted && !a.contains(0)) return false;
  return monoid.contains_all(a);
}

void Ambient::require(const FiniteSet& a, const char* what) const {
  if (!contains(a)) {
    throw DomainError(std::string(what) + " " + a.to_string() + " is not an element of " + to_string());
  }
}

std::string Ambient::to_string() const {
  return std::string(kind == AmbientKind::Restricted ? "P_fin,0(" : "P_fin(") + monoid.to_string() + ")";
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> split_mask(std::uint64_t target) {
  std::uint64_t nodes = 0;
  const detail::Bits64 t{target};
  const detail::Bits64 all{~std::uint64_t{0}};
  detail::SplitSearch<detail::Bits64> search(t, all, all, &nodes, ~std::uint64_t{0});
  auto r = search.run();
  if (!r) return std::nullopt;
  return std::make_pair(r->first.w, r->second.w);
}

std::optional<FiniteSet> max_complement(const FiniteSet& b, const FiniteSet& a, const Ambient& amb) {
  amb.require(a, "dividend");
  amb.require(b, "divisor");
  if (b.max() - b.min() > a.max() - a.min() || b.min() > a.min()) return std::nullopt;
  BitVec c = a.bits().shifted_right(b.min());
  b.bits().for_each([&](std::size_t x) { c &= a.bits().shifted_right(x); });
  if (!amb.monoid.is_naturals()) c &= monoid_mask(amb.monoid, a.max());
  if (c.empty()) return std::nullopt;
  if (amb.kind == AmbientKind::Restricted && !c.test(0)) return std::nullopt;
  return FiniteSet::from_bits(std::move(c));
}

std::optional<FiniteSet> divides(const FiniteSet& b, const FiniteSet& a, const Ambient& amb) {
  auto cmax = max_complement(b, a, amb);
  if (!cmax || sumset(b, *cmax) != a) return std::nullopt;
  BitVec c = cmax->bits();
  for (Element x : cmax->elements()) {
    BitVec trial = c;
    trial.reset(x);
    if (trial.empty()) continue;
    if (sum_bits(b, trial) == a) c = std::move(trial);
  }
  return FiniteSet::from_bits(std::move(c));
}

std::vector<FiniteSet> divisors(const FiniteSet& a, const Ambient& amb, const Budget& budget) {
  amb.require(a, "set");
  std::uint64_t nodes = 0;
  return divisors_impl(a, amb, budget, nodes);
}

std::uint64_t divisor_count(const FiniteSet& a, const Ambient& amb, const Budget& budget) {
  return divisors(a, amb, budget).size();
}

std::vector<FiniteSet> complements(const FiniteSet& b, const FiniteSet& a, const Ambient& amb, const Budget& budget) {
  std::uint64_t nodes = 0;
  return complements_impl(b, a, amb, budget, nodes);
}

AtomCheck is_atom(const FiniteSet& a, const Ambient& amb, const Budget& budget) {
  amb.require(a, "set");
  if (a.is_identity()) throw DomainError("the identity {0} is neither an atom nor a non-atom");
  std::uint64_t nodes = 0;
  AtomCheck out;
  if (amb.kind == AmbientKind::Unrestricted && a.size() == 1) {
    const auto atoms = amb.monoid.atoms();
    out.atom = std::binary_search(atoms.begin(), atoms.end(), a.min());
    if (!out.atom) {
      for (Element k : atoms) {
        if (k < a.min() && amb.monoid.contains(a.min() - k)) {
          out.certificate = SetPair{FiniteSet::singleton(k), FiniteSet::singleton(a.min() - k)};
          break;
        }
      }
    }
    return out;
  }
  auto split = decompose(a, amb, nodes, budget);
  out.atom = !split.has_value();
  if (split) {
    if (sumset(split->first, split->second) != a) {
      throw VerificationFailure("is_atom: certificate does not re-sum to " + a.to_string());
    }
    out.certificate = std::move(split);
  }
  return out;
}

FiniteSet Factorization::sum() const {
  FiniteSet acc;
  for (const FiniteSet& p : parts) acc = sumset(acc, p);
  return acc;
}

std::string Factorization::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) s += " + ";
    s += parts[i].to_string();
  }
  return s + "]";
}

FactorizationSet factorizations(const FiniteSet& a, const Ambient& amb, const Budget& budget) {
  amb.require(a, "set");
  FactorizationSet out;

  // In P_fin(N_0) the prime {1} splits off: P_fin(N_0) = {{k}} ⊕ P_fin,0(N_0).
  if (amb.kind == AmbientKind::Unrestricted && amb.monoid.is_naturals() && a.min() > 0) {
    const Ambient restricted = Ambient::restricted();
    FactorizationSet inner = factorizations(FiniteSet::from_bits(a.bits().shifted_right(a.min())), restricted, budget);
    for (Factorization& z : inner.items) {
      z.parts.insert(z.parts.end(), a.min(), FiniteSet::singleton(1));
      z = canonical(std::move(z.parts));
    }
    std::sort(inner.items.begin(), inner.items.end());
    return inner;
  }

  FactorizationEngine engine(amb, budget);
  std::set<Factorization> acc;
  try {
    if (a.is_identity()) {
      acc.insert(Factorization{});
    } else {
      engine.for_each_step(a, [&](const FiniteSet& u, const Factorization& rest) {
        std::vector<FiniteSet> parts = rest.parts;
        parts.push_back(u);
        acc.insert(canonical(std::move(parts)));
      });
    }
  } catch (const BudgetExceeded&) {
    out.complete = false;
  }
  out.items.assign(acc.begin(), acc.end());
  out.nodes = engine.nodes();
  return out;
}

Factorization some_factorization(const FiniteSet& a, const Ambient& amb, const Budget& budget) {
  amb.require(a, "set");
  if (a.is_identity()) return {};
  std::uint64_t nodes = 0;
  std::vector<FiniteSet> parts;
  std::vector<FiniteSet> stack{a};
  while (!stack.empty()) {
    FiniteSet x = stack.back();
    stack.pop_back();
    std::optional<SetPair> split;
    if (amb.kind == AmbientKind::Unrestricted && x.size() == 1) {
      const AtomCheck c = is_atom(x, amb, budget);
      split = c.certificate;
    } else {
      split = decompose(x, amb, nodes, budget);
    }
    if (!split) {
      parts.push_back(std::move(x));
    } else {
      stack.push_back(std::move(split->first));
      stack.push_back(std::move(split->second));
    }
  }
  return canonical(std::move(parts));
}

LengthSet make_length_set(std::vector<std::uint32_t> lengths) {
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  LengthSet l;
  l.lengths = std::move(lengths);
  for (std::size_t i = 1; i < l.lengths.size(); ++i) l.delta.push_back(l.lengths[i] - l.lengths[i - 1]);
  std::sort(l.delta.begin(), l.delta.end());
  l.delta.erase(std::unique(l.delta.begin(), l.delta.end()), l.delta.end());
  return l;
}

LengthSet length_set(const FactorizationSet& z) {
  if (!z.complete) throw BudgetExceeded("set of lengths needs the complete set of factorizations");
  std::vector<std::uint32_t> lengths;
  for (const Factorization& f : z.items) lengths.push_back(static_cast<std::uint32_t>(f.length()));
  return make_length_set(std::move(lengths));
}

LengthSet length_set(const FiniteSet& a, const Ambient& amb, const Budget& budget) {
  return length_set(factorizations(a, amb, budget));
}

std::uint32_t factorization_distance(const Factorization& z, const Factorization& w) {
  // Parts are sorted non-increasing; merge to count the common multiset part.
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t common = 0;
  while (i < z.parts.size() && j < w.parts.size()) {
    const auto c = z.parts[i] <=> w.parts[j];
    if (c == 0) {
      ++common;
      ++i;
      ++j;
    } else if (c > 0) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<std::uint32_t>(std::max(z.parts.size() - common, w.parts.size() - common));
}

std::uint32_t catenary_degree(const FactorizationSet& z) {
  if (!z.complete) throw DomainError("catenary degree needs the complete set of factorizations");
  const std::size_t n = z.items.size();
  if (n <= 1) return 0;
  // Minimax spanning tree (Prim): the heaviest edge it uses is c(A).
  std::vector<std::uint32_t> best(n, ~std::uint32_t{0});
  std::vector<char> in_tree(n, 0);
  best[0] = 0;
  std::uint32_t worst = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v] == 0 && (pick == n || best[v] < best[pick])) pick = v;
    }
    in_tree[pick] = 1;
    worst = std::max(worst, best[pick]);
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v] == 0) best[v] = std::min(best[v], factorization_distance(z.items[pick], z.items[v]));
    }
  }
  return worst;
}

std::uint32_t catenary_degree(const FiniteSet& a, const Ambient& amb, const Budget& budget) {
  const FactorizationSet z = factorizations(a, amb, budget);
  if (!z.complete) throw BudgetExceeded("catenary degree: factorization enumeration exceeded its budget");
  return catenary_degree(z);
}

// ---------------------------------------------------------------------------

OmegaWitness omega_lower_bound(const Submonoid& s, Element a, std::uint32_t n) {
  if (a == 0 || !s.contains(a)) throw DomainError("omega_lower_bound: a must be a nonzero element of S");
  if (n == 0) throw DomainError("omega_lower_bound: n must be positive");
  const Ambient amb = Ambient::restricted(s);
  OmegaWitness w;
  w.a = a;
  w.n = n;
  w.pair_atom = FiniteSet{0, 2 * a};
  w.triple_atom = FiniteSet{0, 2 * a, 3 * a};
  w.long_atom = FiniteSet{0, a, a * (2 * n + 5)};
  for (const FiniteSet* atom : {&w.pair_atom, &w.triple_atom, &w.long_atom}) {
    if (!is_atom(*atom, amb).atom) {
      throw VerificationFailure("omega_lower_bound: " + atom->to_string() + " is not an atom");
    }
  }

  w.closed_form_ok = true;
  for (std::uint32_t m = 1; m <= n; ++m) {
    const FiniteSet sum = sumset(sumset(k_fold(w.pair_atom, m), w.triple_atom), w.long_atom);
    // a·([0, 2m+4] ∪ {2n+5} ∪ [2n+7, 2m+2n+8])
    BitVec closed;
    for (std::size_t x = 0; x <= 2 * m + 4; ++x) closed.set(x * a);
    closed.set(static_cast<std::size_t>(2 * n + 5) * a);
    for (std::size_t x = 2 * n + 7; x <= 2 * m + 2 * n + 8; ++x) closed.set(x * a);
    if (sum.bits() != closed) w.closed_form_ok = false;
    w.sums.push_back(sum);
  }

  const FiniteSet pair{0, a};
  const FiniteSet& full = w.sums.back();
  BitVec cof;
  for (std::size_t x = 0; x <= 2 * n + 4; ++x) cof.set(x * a);
  for (std::size_t x = 2 * n + 7; x <= 4 * n + 7; ++x) cof.set(x * a);
  w.cofactor = FiniteSet::from_bits(std::move(cof));
  w.divides_full_sum = amb.contains(w.cofactor) && sumset(pair, w.cofactor) == full && divides(pair, full, amb);

  // Every proper subsum j·{0,2a} + e2·{0,2a,3a} + e3·{0,a,a(2n+5)}.
  w.no_proper_subsum_divisible = true;
  for (std::uint32_t j = 0; j <= n; ++j) {
    for (int e2 = 0; e2 <= 1; ++e2) {
      for (int e3 = 0; e3 <= 1; ++e3) {
        if (j == n && e2 == 1 && e3 == 1) continue;
        FiniteSet sub = k_fold(w.pair_atom, j);
        if (e2 != 0) sub = sumset(sub, w.triple_atom);
        if (e3 != 0) sub = sumset(sub, w.long_atom);
        if (divides(pair, sub, amb)) w.no_proper_subsum_divisible = false;
      }
    }
  }
  w.bound = n + 2;
  if (!w.closed_form_ok || !w.divides_full_sum || !w.no_proper_subsum_divisible) {
    throw VerificationFailure("omega_lower_bound: verification failed for a = " + std::to_string(a) +
                              ", n = " + std::to_string(n) + " over " + s.to_string());
  }
  return w;
}

PrimeCheck prime_counterexample(const FiniteSet& a, const Submonoid& s) {
  const Ambient amb = Ambient::unrestricted(s);
  amb.require(a, "set");
  if (a.is_identity()) throw DomainError("prime_counterexample: {0} is a unit");
  PrimeCheck out;
  auto verify = [&](const FiniteSet& b, const FiniteSet& c) {
    return divides(a, sumset(b, c), amb).has_value() && !divides(a, b, amb) && !divides(a, c, amb);
  };

  if (a.size() == 1) {
    const Element k = a.min();
    if (s.is_naturals() && k == 1) {
      out.prime = true;
      return out;
    }
    // {k} | {x + y} while {k} ∤ {x} and {k} ∤ {y}.
    const Element limit = 4 * (s.frobenius() + s.atoms().back() + k) + 8;
    for (Element x = 1; x <= limit; ++x) {
      if (!s.contains(x) || (x >= k && s.contains(x - k))) continue;
      for (Element y = x; y <= limit; ++y) {
        if (!s.contains(y) || (y >= k && s.contains(y - k))) continue;
        if (x + y >= k && s.contains(x + y - k)) {
          out.witness = SetPair{FiniteSet::singleton(x), FiniteSet::singleton(y)};
          if (!verify(out.witness->first, out.witness->second)) {
            throw VerificationFailure("prime_counterexample: singleton witness failed re-verification");
          }
          return out;
        }
      }
    }
    throw BudgetExceeded("prime_counterexample: no singleton witness below " + std::to_string(limit));
  }

  if (s.is_naturals() && a == FiniteSet{0, 1}) {
    out.witness = SetPair{FiniteSet{0, 2, 3}, FiniteSet{0, 1, 3}};
    if (!verify(out.witness->first, out.witness->second)) {
      throw VerificationFailure("prime_counterexample: fixed witness for {0,1} failed");
    }
    return out;
  }

  // B = [m,2m] \ {m+b}, C = [m,2m] \ {2m−b} with b a difference of two elements of A.
  const auto elems = a.elements();
  const Element cap = universe_bound() / 4;
  for (Element m = 2; m <= cap; ++m) {
    bool interval_in_s = true;
    for (Element x = m; x <= 2 * m && interval_in_s; ++x) interval_in_s = s.contains(x);
    if (!interval_in_s) continue;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        const Element b = elems[j] - elems[i];
        if (b >= m) continue;
        const FiniteSet big = FiniteSet::interval(m, 2 * m);
        const FiniteSet bset = without(big, m + b);
        const FiniteSet cset = without(big, 2 * m - b);
        if (verify(bset, cset)) {
          out.witness = SetPair{bset, cset};
          out.m = m;
          return out;
        }
      }
    }
  }
  throw BudgetExceeded("prime_counterexample: no interval witness found below the universe bound");
}

StrongAtomRefutation strong_atom_refuter(const FiniteSet& a, const Ambient& amb, std::uint32_t max_n,
                                         const Budget& budget) {
  amb.require(a, "set");
  if (amb.kind == AmbientKind::Unrestricted && amb.monoid.is_naturals() && a == FiniteSet::singleton(1)) {
    throw DomainError("{1} is absolutely irreducible in P_fin(N_0)");
  }
  if (!is_atom(a, amb, budget).atom) throw DomainError("strong_atom_refuter: " + a.to_string() + " is not an atom");
  std::uint64_t nodes = 0;
  for (std::uint32_t n = 2; n <= max_n; ++n) {
    const FiniteSet target = k_fold(a, n);
    // |Z(nA)| > 1 iff some atom other than A divides nA.
    for (const FiniteSet& u : divisors_impl(target, amb, budget, nodes)) {
      if (u.is_identity() || u == a) continue;
      if (!atom_unchecked(u, amb, nodes, budget)) continue;
      const FiniteSet rest = *divides(u, target, amb);
      Factorization alt = some_factorization(rest, amb, budget);
      alt.parts.push_back(u);
      StrongAtomRefutation r;
      r.n = n;
      r.repeated = Factorization{std::vector<FiniteSet>(n, a)};
      r.alternative = canonical(std::move(alt.parts));
      if (r.alternative.sum() != target || r.alternative == r.repeated) {
        throw VerificationFailure("strong_atom_refuter: alternative factorization failed re-verification");
      }
      return r;
    }
  }
  throw BudgetExceeded("strong_atom_refuter: no N <= " + std::to_string(max_n) + " with |Z(NA)| > 1");
}

std::optional<FiniteSet> search_length_set(const std::vector<std::uint32_t>& target, const Ambient& amb,
                                           const LengthSearchBounds& bounds) {
  if (target.empty()) throw DomainError("search_length_set: target set of lengths is empty");
  const LengthSet want = make_length_set(target);
  if (want.min() < 2) throw DomainError("search_length_set: lengths must be at least 2");

  const bool restricted = amb.kind == AmbientKind::Restricted;
  for (Element top = 1; top <= bounds.max_element; ++top) {
    if (!amb.monoid.contains(top)) continue;
    // Members of S strictly between the forced minimum and `top`.
    std::vector<Element> pool;
    const Element lo_start = restricted ? 1 : 0;
    for (Element x = lo_start; x < top; ++x) {
      if (amb.monoid.contains(x)) pool.push_back(x);
    }
    const std::size_t forced = restricted ? 2 : 1;  // {0, top} or {top}
    for (std::size_t card = forced; card <= bounds.max_cardinality; ++card) {
      const std::size_t pick = card - forced;
      if (pick > pool.size()) break;
      std::vector<std::size_t> idx(pick);
      for (std::size_t i = 0; i < pick; ++i) idx[i] = i;
      while (true) {
        std::vector<Element> elems;
        if (restricted) elems.push_back(0);
        for (std::size_t i : idx) elems.push_back(pool[i]);
        elems.push_back(top);
        const FiniteSet cand = FiniteSet::from_elements(std::span<const Element>(elems));
        if (!cand.is_identity() && !is_atom(cand, amb, bounds.budget).atom) {
          const FactorizationSet z = factorizations(cand, amb, bounds.budget);
          if (z.complete && length_set(z).lengths == want.lengths) return cand;
        }
        // next combination in lexicographic order
        std::size_t i = pick;
        while (i > 0 && idx[i - 1] == pool.size() - pick + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t k = i; k < pick; ++k) idx[k] = idx[k - 1] + 1;
      }
    }
  }
  return std::nullopt;
}

}  // namespace powmon
