#pragma once

// JSON encodings shared by the CLI and the tests. Key order is fixed so
// output is byte-stable.

#include <json.hpp>

#include "powmon/density.hpp"
#include "powmon/factorization.hpp"
#include "powmon/finite_set.hpp"
#include "powmon/numerical_monoid.hpp"
#include "powmon/spectrum.hpp"
#include "powmon/sumset_structure.hpp"

namespace powmon::io {

using Json = nlohmann::ordered_json;

Json to_json(const FiniteSet& a);
/// Inverse of to_json(FiniteSet); ParseError on anything but a nonempty
/// array of distinct nonnegative integers.
FiniteSet set_from_json(const Json& j);

/// {"generators": d-scaled atoms, "d", "atoms": reduced atoms, "frobenius", "genus"}.
Json to_json(const Submonoid& s);
/// Reads {"generators":[...]}.
Submonoid monoid_from_json(const Json& j);

Json to_json(const Factorization& z);
Json to_json(const LengthSet& l);
Json to_json(const DcsDescriptor& d);
DcsDescriptor descriptor_from_json(const Json& j);
/// {"root": n, "children": [...]}; a child is a bare count at the last level
/// and {"count": n, "children": [...]} above it.
Json to_json(const Fingerprint& f);
Json to_json(const DensityReport& r);
Json to_json(const Rational& q);

}  // namespace powmon::io
