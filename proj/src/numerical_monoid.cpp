#include "powmon/numerical_monoid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "powmon/error.hpp"

namespace powmon {

Submonoid::Submonoid() { table_ = BitVec::interval(0, table_limit_); }

Submonoid Submonoid::trivial() {
  Submonoid s;
  s.trivial_ = true;
  s.d_ = 0;
  s.atoms_.clear();
  s.table_ = BitVec::from_word(1);
  s.table_limit_ = 0;
  return s;
}

Submonoid Submonoid::from_generators(std::initializer_list<Element> gens) {
  return from_generators(std::span<const Element>(gens.begin(), gens.size()));
}

Submonoid Submonoid::from_generators(std::span<const Element> gens) {
  if (gens.empty()) throw DomainError("generator list is empty");
  Element d = 0;
  for (Element g : gens) d = std::gcd(d, g);
  if (d == 0) throw DomainError("generators are all zero; use Submonoid::trivial()");

  std::vector<Element> reduced;
  for (Element g : gens) {
    if (g != 0) reduced.push_back(g / d);
  }
  std::sort(reduced.begin(), reduced.end());
  reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
  const Element smallest = reduced.front();
  const Element largest = reduced.back();

  // Mark representable integers until `smallest` consecutive members appear;
  // from there on every integer is representable.
  std::vector<char> member{1};
  std::size_t run = 1;
  std::size_t last_gap = 0;
  bool any_gap = false;
  for (std::size_t n = 1; run < smallest; ++n) {
    char in = 0;
    for (Element g : reduced) {
      if (g > n) break;
      if (member[n - g] != 0) {
        in = 1;
        break;
      }
    }
    member.push_back(in);
    if (in != 0) {
      ++run;
    } else {
      run = 0;
      last_gap = n;
      any_gap = true;
    }
  }

  Submonoid s;
  s.d_ = d;
  s.frobenius_ = any_gap ? static_cast<Element>(last_gap) : 0;
  s.genus_ = 0;
  for (std::size_t n = 1; n <= s.frobenius_; ++n) s.genus_ += member[n] == 0 ? 1 : 0;

  // Atoms are bounded by F + smallest generator.
  s.table_limit_ = static_cast<std::size_t>(s.frobenius_) + largest + 1;
  while (member.size() <= s.table_limit_) member.push_back(1);
  s.table_ = BitVec();
  for (std::size_t n = 0; n <= s.table_limit_; ++n) {
    if (member[n] != 0) s.table_.set(n);
  }
  s.atoms_.clear();
  for (Element g : reduced) {
    bool decomposable = false;
    for (Element h : s.atoms_) {
      if (h < g && member[g - h] != 0) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) s.atoms_.push_back(g);
  }
  return s;
}

std::vector<Element> Submonoid::atoms() const {
  std::vector<Element> out;
  out.reserve(atoms_.size());
  for (Element a : atoms_) out.push_back(a * d_);
  return out;
}

bool Submonoid::contains(std::uint64_t n) const {
  if (n == 0) return true;
  if (trivial_) return false;
  if (n % d_ != 0) return false;
  const std::uint64_t r = n / d_;
  if (r <= table_limit_) return table_.test(static_cast<std::size_t>(r));
  return true;
}

bool Submonoid::contains_all(const FiniteSet& a) const {
  if (is_naturals()) return true;
  bool ok = true;
  a.bits().for_each([&](std::size_t x) { ok = ok && contains(x); });
  return ok;
}

BitVec Submonoid::members_up_to(std::size_t limit) const {
  if (is_naturals()) return BitVec::interval(0, limit);
  BitVec out;
  out.set(0);
  if (trivial_) return out;
  for (std::size_t n = d_; n <= limit; n += d_) {
    if (contains(n)) out.set(n);
  }
  return out;
}

std::string Submonoid::to_string() const {
  if (trivial_) return "<0>";
  std::string s = "<";
  bool first = true;
  for (Element a : atoms()) {
    if (!first) s += ',';
    first = false;
    s += std::to_string(a);
  }
  return s + ">";
}

Submonoid parse_monoid(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  if (compact.size() < 3 || compact.front() != '<' || compact.back() != '>') {
    throw ParseError("monoid literal must look like '<2,5>': '" + std::string(text) + "'");
  }
  std::string_view body(compact);
  body = body.substr(1, body.size() - 2);
  std::vector<Element> gens;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = body.find(',', pos);
    const std::string_view tok = body.substr(pos, comma == std::string_view::npos ? body.size() - pos : comma - pos);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || v < 0) {
      throw ParseError("bad generator '" + std::string(tok) + "' in monoid literal");
    }
    if (v > static_cast<long long>(universe_bound())) throw ParseError("generator exceeds universe bound");
    gens.push_back(static_cast<Element>(v));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (std::all_of(gens.begin(), gens.end(), [](Element g) { return g == 0; })) return Submonoid::trivial();
  return Submonoid::from_generators(std::span<const Element>(gens));
}

Submonoid span(const FiniteSet& a, bool allow_trivial) {
  if (a.is_identity()) {
    if (allow_trivial) return Submonoid::trivial();
    throw DomainError("span of {0} is the trivial monoid");
  }
  const auto elems = a.elements();
  return Submonoid::from_generators(std::span<const Element>(elems));
}

Submonoid remove_atom(const Submonoid& s, Element atom) {
  if (s.is_trivial()) throw DomainError("the trivial monoid has no maximal submonoids");
  if (s.d() != 1) throw DomainError("remove_atom expects a numerical monoid (d = 1)");
  const auto& atoms = s.reduced_atoms();
  if (!std::binary_search(atoms.begin(), atoms.end(), atom)) {
    throw DomainError(std::to_string(atom) + " is not an atom of " + s.to_string());
  }
  // S \ {a} has Frobenius number max(F, a); every atom of it lies below that
  // plus its smallest element, which is at most 2a + max atom.
  const std::size_t new_frob = std::max<std::size_t>(s.frobenius(), atom);
  const std::size_t limit = 2 * (new_frob + atoms.back()) + 2;
  std::vector<Element> gens;
  for (std::size_t n = 1; n <= limit; ++n) {
    if (n != atom && s.contains(n)) gens.push_back(static_cast<Element>(n));
  }
  return Submonoid::from_generators(std::span<const Element>(gens));
}

std::vector<Submonoid> maximal_submonoids(const Submonoid& s) {
  if (s.is_trivial()) throw DomainError("the trivial monoid has no maximal submonoids");
  std::vector<Submonoid> out;
  for (Element a : s.reduced_atoms()) out.push_back(remove_atom(s, a));
  return out;
}

Element m_of(const Submonoid& s) {
  if (s.is_trivial() || s.d() != 1) throw DomainError("m(S) is defined for numerical monoids only");
  Element m = s.reduced_atoms().back();
  while (!(s.contains(m) && s.contains(m - 1))) ++m;
  return m;
}

}  // namespace powmon
