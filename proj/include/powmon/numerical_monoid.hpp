#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "powmon/bit_vector.hpp"
#include "powmon/finite_set.hpp"

namespace powmon {

/// An additive submonoid S = d * S' of the nonnegative integers, S' numerical.
///
/// Frobenius convention: F(N_0) = 0, so every n > frobenius() lies in S'.
/// The trivial monoid {0} is only produced by trivial().
class Submonoid {
 public:
  /// N_0.
  Submonoid();
  static Submonoid trivial();
  /// DomainError on empty input or generators that are all zero.
  static Submonoid from_generators(std::span<const Element> gens);
  static Submonoid from_generators(std::initializer_list<Element> gens);
  static Submonoid naturals() { return Submonoid(); }

  [[nodiscard]] bool is_trivial() const { return trivial_; }
  [[nodiscard]] bool is_numerical() const { return !trivial_ && d_ == 1; }
  [[nodiscard]] bool is_naturals() const { return !trivial_ && d_ == 1 && frobenius_ == 0; }
  [[nodiscard]] Element d() const { return d_; }
  /// Frobenius number of the reduced monoid S'.
  [[nodiscard]] Element frobenius() const { return frobenius_; }
  /// Minimal generating set of S' (reduced scale), ascending.
  [[nodiscard]] const std::vector<Element>& reduced_atoms() const { return atoms_; }
  /// Minimal generating set of S itself, i.e. d * reduced_atoms().
  [[nodiscard]] std::vector<Element> atoms() const;
  [[nodiscard]] Element genus() const { return genus_; }

  [[nodiscard]] bool contains(std::uint64_t n) const;
  /// Every element of the set lies in S.
  [[nodiscard]] bool contains_all(const FiniteSet& a) const;
  /// Membership mask of S intersected with [0, limit].
  [[nodiscard]] BitVec members_up_to(std::size_t limit) const;

  /// Literal form, e.g. "<2,5>"; "<0>" for the trivial monoid.
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Submonoid& a, const Submonoid& b) {
    return a.trivial_ == b.trivial_ && a.d_ == b.d_ && a.atoms_ == b.atoms_;
  }

 private:
  bool trivial_ = false;
  Element d_ = 1;
  Element frobenius_ = 0;
  Element genus_ = 0;
  std::vector<Element> atoms_{1};
  BitVec table_;  // S' on [0, frobenius + max atom + 1]
  std::size_t table_limit_ = 2;
};

/// Parses "<2,5>".
Submonoid parse_monoid(std::string_view text);

/// The submonoid generated by the elements of A. DomainError for A = {0}
/// unless allow_trivial is set.
Submonoid span(const FiniteSet& a, bool allow_trivial = false);

/// S \ {a} for each atom a of a numerical monoid, in atom order.
std::vector<Submonoid> maximal_submonoids(const Submonoid& s);

/// S \ {a} for one atom a.
Submonoid remove_atom(const Submonoid& s, Element atom);

/// Smallest m >= max atom with m - 1 and m in S. Requires d = 1.
Element m_of(const Submonoid& s);

}  // namespace powmon
