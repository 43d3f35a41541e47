#include "powmon/finite_set.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <numeric>
#include <ostream>

#include "powmon/error.hpp"

namespace powmon {

namespace {

std::atomic<Element> g_universe_bound{4096};

void check_bound(std::size_t x) {
  if (x > g_universe_bound.load(std::memory_order_relaxed)) {
    throw UniverseError("element " + std::to_string(x) + " exceeds universe bound " +
                        std::to_string(g_universe_bound.load()));
  }
}

}  // namespace

Element universe_bound() { return g_universe_bound.load(std::memory_order_relaxed); }
void set_universe_bound(Element bound) { g_universe_bound.store(bound, std::memory_order_relaxed); }

FiniteSet::FiniteSet() { bits_.set(0); }

FiniteSet::FiniteSet(std::initializer_list<Element> elems)
    : FiniteSet(from_elements(std::span<const Element>(elems.begin(), elems.size()))) {}

FiniteSet::FiniteSet(BitVec bits) : bits_(std::move(bits)) {
  const std::size_t hi = bits_.highest();
  check_bound(hi);
  min_ = static_cast<Element>(bits_.lowest());
  max_ = static_cast<Element>(hi);
  size_ = bits_.popcount();
}

FiniteSet FiniteSet::from_elements(std::span<const Element> elems) {
  if (elems.empty()) throw DomainError("a finite set must be nonempty");
  BitVec bits;
  for (Element e : elems) {
    check_bound(e);
    if (bits.test(e)) throw DomainError("duplicate element " + std::to_string(e));
    bits.set(e);
  }
  return FiniteSet(std::move(bits));
}

FiniteSet FiniteSet::from_elements(std::span<const long long> elems) {
  std::vector<Element> out;
  out.reserve(elems.size());
  for (long long e : elems) {
    if (e < 0) throw DomainError("negative element " + std::to_string(e));
    check_bound(static_cast<std::size_t>(e));
    out.push_back(static_cast<Element>(e));
  }
  return from_elements(std::span<const Element>(out));
}

FiniteSet FiniteSet::from_bits(BitVec bits) {
  if (bits.empty()) throw DomainError("a finite set must be nonempty");
  return FiniteSet(std::move(bits));
}

FiniteSet FiniteSet::interval(Element lo, Element hi) {
  if (hi < lo) throw DomainError("empty interval");
  check_bound(hi);
  return FiniteSet(BitVec::interval(lo, hi));
}

FiniteSet FiniteSet::singleton(Element x) {
  check_bound(x);
  BitVec b;
  b.set(x);
  return FiniteSet(std::move(b));
}

std::vector<Element> FiniteSet::elements() const {
  std::vector<Element> out;
  out.reserve(size_);
  bits_.for_each([&](std::size_t i) { out.push_back(static_cast<Element>(i)); });
  return out;
}

std::string FiniteSet::to_string() const {
  std::string s = "{";
  bool first = true;
  bits_.for_each([&](std::size_t i) {
    if (!first) s += ',';
    first = false;
    s += std::to_string(i);
  });
  s += '}';
  return s;
}

std::strong_ordering operator<=>(const FiniteSet& a, const FiniteSet& b) {
  if (auto c = a.max_ <=> b.max_; c != 0) return c;
  // Lexicographic on ascending lists: the first differing position decides,
  // and the set that holds the smaller element there comes first.
  const BitVec diff = a.bits_ ^ b.bits_;
  if (diff.empty()) return std::strong_ordering::equal;
  const std::size_t first = diff.lowest();
  return a.bits_.test(first) ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::ostream& operator<<(std::ostream& os, const FiniteSet& s) { return os << s.to_string(); }

FiniteSet parse_set(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  if (compact.size() < 2) throw ParseError("malformed set literal: '" + std::string(text) + "'");
  const char open = compact.front();
  const char close = compact.back();
  const bool braces = open == '{' && close == '}';
  const bool interval = open == '[' && close == ']';
  if (!braces && !interval) throw ParseError("set literal must be '{a,b,...}' or '[lo,hi]': '" + std::string(text) + "'");

  std::vector<long long> values;
  std::string_view body(compact);
  body = body.substr(1, body.size() - 2);
  if (body.empty()) throw ParseError("empty set literal");
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = body.find(',', pos);
    const std::string_view tok = body.substr(pos, comma == std::string_view::npos ? body.size() - pos : comma - pos);
    long long v = 0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (tok.empty() || ec != std::errc{} || ptr != last) {
      throw ParseError("bad integer '" + std::string(tok) + "' in set literal");
    }
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (interval) {
    if (values.size() != 2) throw ParseError("interval literal needs exactly two bounds");
    if (values[0] < 0 || values[1] < 0) throw ParseError("negative element in interval literal");
    if (values[1] < values[0]) throw ParseError("empty interval literal");
    return FiniteSet::interval(static_cast<Element>(values[0]), static_cast<Element>(values[1]));
  }
  try {
    return FiniteSet::from_elements(std::span<const long long>(values));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

FiniteSet sumset(const FiniteSet& a, const FiniteSet& b) {
  const FiniteSet& small = a.size() <= b.size() ? a : b;
  const FiniteSet& large = a.size() <= b.size() ? b : a;
  check_bound(static_cast<std::size_t>(a.max()) + b.max());
  BitVec out;
  small.bits().for_each([&](std::size_t s) { out.or_shifted(large.bits(), s); });
  return FiniteSet::from_bits(std::move(out));
}

FiniteSet k_fold(const FiniteSet& a, std::uint32_t k) {
  FiniteSet acc;
  if (k == 0) return acc;
  check_bound(static_cast<std::size_t>(a.max()) * k);
  // Square-and-multiply keeps the number of convolutions logarithmic in k.
  FiniteSet base = a;
  bool have = false;
  while (k > 0) {
    if (k & 1U) {
      acc = have ? sumset(acc, base) : base;
      have = true;
    }
    k >>= 1U;
    if (k > 0) base = sumset(base, base);
  }
  return acc;
}

FiniteSet dilate(const FiniteSet& a, std::uint32_t k) {
  if (k == 0) throw DomainError("dilation factor must be positive");
  check_bound(static_cast<std::size_t>(a.max()) * k);
  BitVec out;
  a.bits().for_each([&](std::size_t x) { out.set(x * k); });
  return FiniteSet::from_bits(std::move(out));
}

FiniteSet reversion(const FiniteSet& a) {
  BitVec out;
  const std::size_t m = a.max();
  a.bits().for_each([&](std::size_t x) { out.set(m - x); });
  return FiniteSet::from_bits(std::move(out));
}

FiniteSet translate(const FiniteSet& a, Element k) {
  check_bound(static_cast<std::size_t>(a.max()) + k);
  return FiniteSet::from_bits(a.bits().shifted_left(k));
}

Element set_gcd(const FiniteSet& a) {
  Element g = 0;
  a.bits().for_each([&](std::size_t x) { g = std::gcd(g, static_cast<Element>(x)); });
  return g;
}

std::vector<Element> delta_set(const FiniteSet& a) {
  std::vector<Element> gaps;
  std::size_t prev = a.min();
  a.bits().for_each([&](std::size_t x) {
    if (x != prev) gaps.push_back(static_cast<Element>(x - prev));
    prev = x;
  });
  std::sort(gaps.begin(), gaps.end());
  gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
  return gaps;
}

FiniteSet without(const FiniteSet& a, Element x) {
  BitVec b = a.bits();
  b.reset(x);
  return FiniteSet::from_bits(std::move(b));
}

Normalized normalize(const FiniteSet& a) {
  Normalized n;
  n.shift = a.min();
  if (a.size() == 1) return n;
  BitVec shifted = a.bits().shifted_right(a.min());
  Element g = 0;
  shifted.for_each([&](std::size_t x) { g = std::gcd(g, static_cast<Element>(x)); });
  n.d = g;
  BitVec core;
  shifted.for_each([&](std::size_t x) { core.set(x / g); });
  n.core = FiniteSet::from_bits(std::move(core));
  return n;
}

FiniteSet denormalize(const Normalized& n) { return translate(dilate(n.core, n.d), n.shift); }

}  // namespace powmon
