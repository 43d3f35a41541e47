#include "powmon/io.hpp"

#include "powmon/error.hpp"

namespace powmon::io {

namespace {

Json child_json(const Fingerprint& f) {
  if (f.children.empty()) return f.count;
  Json kids = Json::array();
  for (const Fingerprint& c : f.children) kids.push_back(child_json(c));
  return Json{{"count", f.count}, {"children", kids}};
}

}  // namespace

Json to_json(const FiniteSet& a) {
  Json out = Json::array();
  for (Element x : a.elements()) out.push_back(x);
  return out;
}

FiniteSet set_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("set must be a nonempty JSON array");
  std::vector<long long> elems;
  for (const Json& x : j) {
    if (!x.is_number_integer()) throw ParseError("set elements must be integers");
    elems.push_back(x.get<long long>());
  }
  return FiniteSet::from_elements(std::span<const long long>(elems));
}

Json to_json(const Submonoid& s) {
  if (s.is_trivial()) return Json{{"generators", Json::array({0})}, {"d", 0}};
  return Json{{"generators", s.atoms()},
              {"d", s.d()},
              {"atoms", s.reduced_atoms()},
              {"frobenius", s.frobenius()},
              {"genus", s.genus()}};
}

Submonoid monoid_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array()) {
    throw ParseError("monoid must be an object with a \"generators\" array");
  }
  std::vector<Element> gens;
  for (const Json& g : j["generators"]) {
    if (!g.is_number_unsigned() && !(g.is_number_integer() && g.get<long long>() >= 0)) {
      throw ParseError("generators must be nonnegative integers");
    }
    gens.push_back(g.get<Element>());
  }
  if (gens.empty() || std::all_of(gens.begin(), gens.end(), [](Element g) { return g == 0; })) {
    return Submonoid::trivial();
  }
  return Submonoid::from_generators(std::span<const Element>(gens));
}

Json to_json(const Factorization& z) {
  Json parts = Json::array();
  for (const FiniteSet& p : z.parts) parts.push_back(to_json(p));
  return parts;
}

Json to_json(const LengthSet& l) { return Json{{"lengths", l.lengths}, {"delta", l.delta}}; }

Json to_json(const DcsDescriptor& d) {
  if (d.trivial) return Json{{"d", 0}, {"trivial", true}};
  return Json{{"d", d.d},
              {"S", Json{{"generators", d.S.reduced_atoms()}}},
              {"T", Json{{"generators", d.T.reduced_atoms()}}}};
}

DcsDescriptor descriptor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("d")) throw ParseError("descriptor must be an object with \"d\"");
  if (j.value("trivial", false)) return DcsDescriptor::trivial_descriptor();
  const Element d = j["d"].get<Element>();
  if (d == 0) throw ParseError("descriptor d must be positive");
  DcsDescriptor out{d, monoid_from_json(j.at("S")), monoid_from_json(j.at("T")), false};
  if (!out.S.is_numerical() || !out.T.is_numerical()) throw ParseError("descriptor S and T must be numerical");
  return out;
}

Json to_json(const Fingerprint& f) {
  Json out{{"root", f.count}};
  if (!f.children.empty()) {
    Json kids = Json::array();
    for (const Fingerprint& c : f.children) kids.push_back(child_json(c));
    out["children"] = kids;
  }
  return out;
}

Json to_json(const DensityReport& r) {
  Json out{{"N", r.N}, {"variant", to_string(r.variant)}};
  if (r.variant != DensityVariant::AllSubsets) out["monoid"] = r.monoid.to_string();
  out["mode"] = to_string(r.mode);
  out["total"] = r.total;
  out["atoms"] = r.atoms;
  out["decomposables"] = r.decomposables;
  out["identity_count"] = r.identity_count;
  out["estimate"] = r.estimate;
  out["stderr"] = r.stderr_;
  if (r.mode == DensityMode::MonteCarlo) {
    out["trials"] = r.trials;
    out["seed"] = r.seed;
  }
  return out;
}

Json to_json(const Rational& q) { return Json{{"num", q.num}, {"den", q.den}, {"value", q.to_double()}}; }

}  // namespace powmon::io
