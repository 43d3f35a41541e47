#include "powmon/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "powmon/density.hpp"
#include "powmon/error.hpp"
#include "powmon/factorization.hpp"
#include "powmon/io.hpp"
#include "powmon/spectrum.hpp"
#include "powmon/sumset_structure.hpp"

namespace powmon::cli {

namespace {

using io::Json;
using io::to_json;

struct Output {
  Json json;
  std::string plain;
  std::vector<Json> rows;  // csv rows; derived from json when empty
  bool incomplete = false;
};

struct Options {
  std::string format = "plain";
  std::uint64_t budget = 10'000'000;
  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::string monoid = "<1>";
  std::string ambient = "restricted";
  std::uint32_t depth = 2;

  std::vector<std::string> sets;
  std::uint32_t n = 0;
  std::uint32_t n2 = 0;
  std::uint64_t trials = 100000;
  std::string variant = "restricted";
  std::string t_monoid = "<1>";
  std::uint32_t d = 1;
  std::string from_set;
  bool structural = false;
  std::uint32_t max_element = 12;
  std::uint32_t max_cardinality = 8;
  std::uint32_t max_n = 64;
  std::uint32_t max_exponent = 22;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string join_sets(const std::vector<FiniteSet>& sets, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i != 0) s += sep;
    s += sets[i].to_string();
  }
  return s;
}

std::string list_string(const std::vector<std::uint32_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) s += ',';
    s += std::to_string(v[i]);
  }
  return s + "}";
}

std::string csv_cell(const Json& v) {
  std::string raw = v.is_string() ? v.get<std::string>() : v.dump();
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string q = "\"";
  for (char c : raw) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string to_csv(const Output& o) {
  std::vector<Json> rows = o.rows;
  if (rows.empty()) {
    if (o.json.is_array() && !o.json.empty() && o.json.front().is_object()) {
      rows.assign(o.json.begin(), o.json.end());
    } else if (o.json.is_object()) {
      rows.push_back(o.json);
    } else if (o.json.is_array()) {
      for (const Json& v : o.json) rows.push_back(Json{{"value", v}});
    } else {
      rows.push_back(Json{{"value", o.json}});
    }
  }
  std::string out;
  if (rows.empty()) return out;
  bool first = true;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
    if (!first) out += ',';
    first = false;
    out += it.key();
  }
  out += '\n';
  for (const Json& r : rows) {
    first = true;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
      if (!first) out += ',';
      first = false;
      out += r.contains(it.key()) ? csv_cell(r[it.key()]) : "";
    }
    out += '\n';
  }
  return out;
}

Json density_row(const DensityReport& r) {
  return Json{{"N", r.N},
              {"variant", to_string(r.variant)},
              {"mode", to_string(r.mode)},
              {"total", r.total},
              {"atoms", r.atoms},
              {"decomposables", r.decomposables},
              {"estimate", r.estimate},
              {"stderr", r.stderr_},
              {"seed", r.mode == DensityMode::MonteCarlo ? Json(r.seed) : Json("")}};
}

std::string density_plain(const DensityReport& r) {
  std::ostringstream os;
  os << "N = " << r.N << ", variant " << to_string(r.variant);
  if (r.variant != DensityVariant::AllSubsets) os << " over " << r.monoid.to_string();
  os << ", " << to_string(r.mode) << "\n";
  os << "total " << r.total << ", atoms " << r.atoms << ", decomposables " << r.decomposables << ", identity "
     << r.identity_count << "\n";
  os << "estimate " << r.estimate;
  if (r.mode == DensityMode::MonteCarlo) os << " +- " << r.stderr_ << " (" << r.trials << " trials, seed " << r.seed << ")";
  os << "\n";
  return os.str();
}

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {}

  FiniteSet set(std::size_t i) const {
    if (i >= o_.sets.size()) throw UsageError("missing set argument " + std::to_string(i + 1));
    return parse_set(o_.sets[i]);
  }
  Submonoid monoid() const { return parse_monoid(o_.monoid); }
  Budget budget() const { return Budget{o_.budget}; }
  Ambient ambient() const {
    if (o_.ambient == "restricted") return Ambient::restricted(monoid());
    if (o_.ambient == "unrestricted") return Ambient::unrestricted(monoid());
    throw UsageError("--ambient must be restricted or unrestricted");
  }
  DcsDescriptor descriptor() const {
    if (!o_.from_set.empty()) return dcs_of(parse_set(o_.from_set));
    DcsDescriptor d{o_.d, monoid(), parse_monoid(o_.t_monoid), false};
    if (d.d == 0 || !d.S.is_numerical() || !d.T.is_numerical()) {
      throw DomainError("descriptor needs d > 0 and numerical S, T");
    }
    return d;
  }

  Output sumset_cmd() const {
    if (o_.sets.size() < 2) throw UsageError("sumset needs at least two sets");
    FiniteSet acc = set(0);
    for (std::size_t i = 1; i < o_.sets.size(); ++i) acc = sumset(acc, set(i));
    return {to_json(acc), acc.to_string() + "\n", {}};
  }

  Output nfold_cmd() const {
    const FiniteSet a = set(0);
    const FiniteSet r = o_.structural ? structural_nfold(a, o_.n) : k_fold(a, o_.n);
    return {to_json(r), r.to_string() + "\n", {}};
  }

  Output rev_cmd() const {
    const FiniteSet r = reversion(set(0));
    return {to_json(r), r.to_string() + "\n", {}};
  }

  Output delta_cmd() const {
    const auto gaps = delta_set(set(0));
    return {Json(gaps), list_string(gaps) + "\n", {}};
  }

  Output monoid_info_cmd() const {
    const Submonoid s = monoid();
    Json j = to_json(s);
    std::ostringstream os;
    os << "monoid " << s.to_string() << "\n";
    if (!s.is_trivial()) {
      os << "frobenius " << s.frobenius() << "\ngenus " << s.genus() << "\n";
      if (s.is_numerical()) {
        const Element m = m_of(s);
        j["m"] = m;
        os << "m " << m << "\n";
      }
    }
    return {j, os.str(), {}};
  }

  Output span_cmd() const {
    const Submonoid s = span(set(0), true);
    return {to_json(s), s.to_string() + "\n", {}};
  }

  Output atom_cmd() const {
    const FiniteSet a = set(0);
    const AtomCheck c = is_atom(a, ambient(), budget());
    Json j{{"set", to_json(a)}, {"atom", c.atom}};
    std::string plain = c.atom ? "atom\n" : "not atom";
    if (c.certificate) {
      j["witness"] = Json::array({to_json(c.certificate->first), to_json(c.certificate->second)});
      plain += ": " + c.certificate->first.to_string() + " + " + c.certificate->second.to_string() + "\n";
    } else if (!c.atom) {
      plain += "\n";
    }
    return {j, plain, {}};
  }

  Output divides_cmd() const {
    const FiniteSet b = set(0);
    const FiniteSet a = set(1);
    const auto c = divides(b, a, ambient());
    Json j{{"B", to_json(b)}, {"A", to_json(a)}, {"divides", c.has_value()}};
    if (c) j["complement"] = to_json(*c);
    return {j, c ? "divides: " + b.to_string() + " + " + c->to_string() + " = " + a.to_string() + "\n"
                 : "does not divide\n",
            {}};
  }

  Output divisors_cmd() const {
    const auto ds = divisors(set(0), ambient(), budget());
    Json list = Json::array();
    std::vector<Json> rows;
    for (const FiniteSet& d : ds) {
      list.push_back(to_json(d));
      rows.push_back(Json{{"divisor", d.to_string()}});
    }
    return {Json{{"count", ds.size()}, {"divisors", list}}, join_sets(ds, "\n") + "\n", rows};
  }

  Output factorize_cmd() const {
    const FiniteSet a = set(0);
    const FactorizationSet z = factorizations(a, ambient(), budget());
    Json list = Json::array();
    std::vector<Json> rows;
    std::string plain;
    for (const Factorization& f : z.items) {
      list.push_back(to_json(f));
      rows.push_back(Json{{"length", f.length()}, {"factorization", f.to_string()}});
      plain += f.to_string() + "\n";
    }
    Output o{Json{{"set", to_json(a)}, {"complete", z.complete}, {"count", z.items.size()}, {"factorizations", list}},
             plain, rows};
    o.incomplete = !z.complete;
    return o;
  }

  Output lengths_cmd() const {
    const LengthSet l = length_set(set(0), ambient(), budget());
    return {to_json(l), "L = " + list_string(l.lengths) + "\nDelta = " + list_string(l.delta) + "\n", {}};
  }

  Output catenary_cmd() const {
    const std::uint32_t c = catenary_degree(set(0), ambient(), budget());
    return {Json{{"catenary_degree", c}}, std::to_string(c) + "\n", {}};
  }

  Output prime_refute_cmd() const {
    const PrimeCheck p = prime_counterexample(set(0), monoid());
    Json j{{"prime", p.prime}};
    std::string plain = p.prime ? "prime\n" : "";
    if (p.witness) {
      j["witness"] = Json{{"B", to_json(p.witness->first)}, {"C", to_json(p.witness->second)}};
      if (p.m != 0) j["m"] = p.m;
      plain = "not prime: A | " + p.witness->first.to_string() + " + " + p.witness->second.to_string() +
              " but divides neither summand\n";
    }
    return {j, plain, {}};
  }

  Output strong_atom_cmd() const {
    const StrongAtomRefutation r = strong_atom_refuter(set(0), ambient(), o_.max_n, budget());
    Json j{{"n", r.n}, {"repeated", to_json(r.repeated)}, {"alternative", to_json(r.alternative)}};
    return {j, "N = " + std::to_string(r.n) + ": " + r.alternative.to_string() + "\n", {}};
  }

  Output omega_cmd() const {
    if (o_.n2 == 0) throw UsageError("omega-bound needs --a");
    const OmegaWitness w = omega_lower_bound(monoid(), o_.n2, o_.n == 0 ? 1 : o_.n);
    Json sums = Json::array();
    for (const FiniteSet& s : w.sums) sums.push_back(to_json(s));
    Json j{{"a", w.a},
           {"n", w.n},
           {"bound", w.bound},
           {"atoms", Json::array({to_json(w.pair_atom), to_json(w.triple_atom), to_json(w.long_atom)})},
           {"sums", sums},
           {"cofactor", to_json(w.cofactor)},
           {"closed_form_ok", w.closed_form_ok},
           {"divides_full_sum", w.divides_full_sum},
           {"no_proper_subsum_divisible", w.no_proper_subsum_divisible}};
    return {j, "omega({0," + std::to_string(w.a) + "}) >= " + std::to_string(w.bound) + "\n", {}};
  }

  Output dcs_cmd() const {
    const DcsDescriptor d = dcs_of(set(0));
    Json j = to_json(d);
    j["full"] = !d.trivial && d.d == 1 && d.S.is_naturals() && d.T.is_naturals();
    return {j, d.to_string() + "\n", {}};
  }

  Output mdcs_cmd() const {
    const auto kids = mdcs(descriptor());
    Json list = Json::array();
    std::string plain;
    for (const DcsDescriptor& k : kids) {
      list.push_back(to_json(k));
      plain += k.to_string() + "\n";
    }
    return {list, plain, {}};
  }

  Output fingerprint_cmd() const {
    const Fingerprint f = mdcs_fingerprint(descriptor(), o_.depth);
    const Json j = to_json(f);
    return {j, j.dump() + "\n", {}};
  }

  Output gen_dcs_cmd() const {
    const FiniteSet a = dcs_generator(descriptor());
    return {to_json(a), a.to_string() + "\n", {}};
  }

  Output witnesses_cmd() const {
    const NoncancellativeWitness w = noncancellative_witnesses(descriptor(), o_.n);
    Json j{{"n_star", w.n_star}, {"n", w.n},         {"B", to_json(w.B)},
           {"C", to_json(w.C)},  {"D", to_json(w.D)}, {"F", to_json(w.F)},
           {"A", to_json(w.A)},  {"B+B", to_json(w.doubled)},
           {"members_ok", w.members_ok}, {"transfer_ok", w.transfer_ok}, {"torsion_ok", w.torsion_ok}};
    std::ostringstream os;
    os << "n* = " << w.n_star << ", n = " << w.n << "\n"
       << "F = B + C = B + D + D = " << w.F.to_string() << "\n"
       << "A + A = B + B = " << w.doubled.to_string() << " with A = " << w.A.to_string() << "\n";
    return {j, os.str(), {}};
  }

  Output density_exact_cmd() const {
    DensityVariant v;
    if (o_.variant == "restricted") {
      v = DensityVariant::Restricted;
    } else if (o_.variant == "all") {
      v = DensityVariant::AllSubsets;
    } else if (o_.variant == "unrestricted") {
      v = DensityVariant::Unrestricted;
    } else {
      throw UsageError("--variant must be restricted, all or unrestricted");
    }
    const DensityReport r = count_exact(o_.n, v, monoid(), ExactOptions{o_.max_exponent, o_.threads});
    return {to_json(r), density_plain(r), {density_row(r)}};
  }

  Output density_sample_cmd() const {
    const DensityReport r = sample_decomposable(o_.n, o_.trials, o_.seed, o_.threads);
    return {to_json(r), density_plain(r), {density_row(r)}};
  }

  Output density_limit_cmd() const {
    const DensityLimit l = density_limit_pfin(monoid());
    Json j{{"monoid", monoid().to_string()}, {"d_S", l.d_S},          {"window", l.window},
           {"union_count", l.union_count},  {"limit", to_json(l.atoms)}, {"non_atoms", to_json(l.non_atoms)},
           {"printed_formula", to_json(l.printed_formula)}};
    return {j, l.atoms.to_string() + "\n", {}};
  }

  Output growth_cmd() const {
    const GrowthReport g = growth_constant_bounds(o_.n, ExactOptions{o_.max_exponent, o_.threads});
    Json rows = Json::array();
    std::vector<Json> csv;
    std::ostringstream os;
    for (const GrowthRow& r : g.rows) {
      Json row{{"N", r.N}, {"dec", r.dec}, {"slope", r.slope}, {"step", r.step}};
      rows.push_back(row);
      csv.push_back(row);
      os << r.N << " " << r.dec << " " << r.slope << " " << r.step << "\n";
    }
    os << "proven bracket for c: [1.754, 2)\n";
    Json j{{"rows", rows}, {"bracket", Json{{"lower", g.proven_lower}, {"upper", g.proven_upper}, {"upper_exclusive", true}}}};
    return {j, os.str(), csv};
  }

  Output find_lengthset_cmd() const {
    const std::vector<Element> elems = set(0).elements();
    const std::vector<std::uint32_t> lengths(elems.begin(), elems.end());
    LengthSearchBounds b;
    b.max_element = o_.max_element;
    b.max_cardinality = o_.max_cardinality;
    b.budget = budget();
    const auto found = search_length_set(lengths, ambient(), b);
    Json j{{"target", lengths}, {"found", found.has_value()}};
    if (found) j["set"] = to_json(*found);
    return {j, found ? found->to_string() + "\n" : "not found within bounds\n", {}};
  }

  Output nstar_cmd() const {
    const StructuralForm f = structural_form(set(0));
    Json j{{"n_star", f.n_star}, {"d", f.d}, {"S", to_json(f.S)}, {"T", to_json(f.T)}};
    return {j, std::to_string(f.n_star) + "\n", {}};
  }

  Output cancel_refute_cmd() const {
    const CancellationWitness w = cancellation_counterexample(set(0));
    Json j{{"n", w.n}, {"B", to_json(w.b)}, {"nA", to_json(w.n_fold)}, {"next", to_json(w.next_fold)}};
    return {j, "n = " + std::to_string(w.n) + ": A + " + w.b.to_string() + " = " + w.next_fold.to_string() + "\n", {}};
  }

  Output groth_class_cmd() const {
    const auto variant = o_.ambient == "restricted" ? GrothendieckVariant::Restricted : GrothendieckVariant::Unrestricted;
    const FiniteSet a = set(0);
    const FiniteSet b = set(1);
    const GrothendieckClass c = grothendieck_class(a, b, variant);
    Json j{{"max_diff", c.max_diff}};
    if (variant == GrothendieckVariant::Unrestricted) j["min_diff"] = c.min_diff;
    std::string plain = "[A] - [B] = (" + std::to_string(c.max_diff) +
                        (variant == GrothendieckVariant::Unrestricted ? ", " + std::to_string(c.min_diff) : "") + ")\n";
    if (o_.sets.size() >= 4) {
      const FiniteSet cc = set(2);
      const FiniteSet d = set(3);
      const bool equal = grothendieck_class(cc, d, variant) == c;
      const auto e = grothendieck_witness(a, b, cc, d, variant, monoid());
      j["equal"] = equal;
      j["witness"] = e ? to_json(*e) : Json(nullptr);
      plain += std::string(equal ? "same class" : "different class");
      plain += e ? ", witness E = " + e->to_string() + "\n" : ", no witness E\n";
    }
    return {j, plain, {}};
  }

 private:
  const Options& o_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  if (const char* env = std::getenv("POWMON_BUDGET")) {
    try {
      o.budget = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: POWMON_BUDGET is not a number\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Exact computations in power monoids of numerical monoids", "powmon"};
  app.fallthrough();
  app.allow_extras();
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"plain", "json", "csv"}))->capture_default_str();
  app.add_option("--budget", o.budget, "Node budget for every search (default: POWMON_BUDGET or 10000000)")
      ->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads, 0 = hardware concurrency")->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for sampling")->capture_default_str();
  app.add_option("--monoid", o.monoid, "Ambient numerical monoid, e.g. '<2,5>'")->capture_default_str();
  app.add_option("--ambient", o.ambient, "restricted (P_fin,0) or unrestricted (P_fin)")->capture_default_str();
  app.add_option("--depth", o.depth, "Fingerprint depth")->capture_default_str();

  std::map<std::string, std::function<Output(const Runner&)>> handlers;
  // Set literals are collected as extras: CLI11 would split "[0,6]" as its own list syntax.
  std::set<std::string> takes_sets;
  auto sets = [&](CLI::App* sub, const char* what) {
    takes_sets.insert(sub->get_name());
    sub->allow_extras();
    sub->footer(std::string("Positional: ") + what);
  };
  auto descriptor_flags = [&](CLI::App* sub) {
    sub->add_option("--t", o.t_monoid, "Monoid T of the descriptor")->capture_default_str();
    sub->add_option("--d", o.d, "Scale d of the descriptor")->capture_default_str();
    sub->add_option("--set", o.from_set, "Use the descriptor of this set instead");
  };
  auto add = [&](const char* name, const char* help, std::function<Output(const Runner&)> h) {
    handlers[name] = std::move(h);
    return app.add_subcommand(name, help);
  };

  sets(add("sumset", "Sumset of two or more sets", &Runner::sumset_cmd), "Set literals");
  {
    auto* s = add("nfold", "n-fold sumset nA", &Runner::nfold_cmd);
    sets(s, "Set literal");
    s->add_option("--n", o.n, "n")->required();
    s->add_flag("--structural", o.structural, "Use the large-n structure formula (requires n >= n_star)");
  }
  sets(add("rev", "Reversion max A - A", &Runner::rev_cmd), "Set literal");
  sets(add("delta", "Gaps between consecutive elements", &Runner::delta_cmd), "Set literal");
  add("monoid-info", "Atoms, Frobenius number, genus and m(S) of --monoid", &Runner::monoid_info_cmd);
  sets(add("span", "Monoid generated by a set", &Runner::span_cmd), "Set literal");
  sets(add("atom", "Atom test with a certificate", &Runner::atom_cmd), "Set literal");
  sets(add("divides", "Whether B divides A, with a complement C", &Runner::divides_cmd), "Set literals B A");
  sets(add("divisors", "All divisors", &Runner::divisors_cmd), "Set literal");
  sets(add("factorize", "All factorizations into atoms", &Runner::factorize_cmd), "Set literal");
  sets(add("lengths", "Set of lengths and its gaps", &Runner::lengths_cmd), "Set literal");
  sets(add("catenary", "Catenary degree", &Runner::catenary_cmd), "Set literal");
  sets(add("prime-refute", "Witness that a set is not prime in P_fin(S)", &Runner::prime_refute_cmd), "Set literal");
  {
    auto* s = add("strong-atom-refute", "Least N with more than one factorization of NA", &Runner::strong_atom_cmd);
    sets(s, "Set literal");
    s->add_option("--max-n", o.max_n, "Largest N tried")->capture_default_str();
  }
  {
    auto* s = add("omega-bound", "Certify omega({0,a}) >= n + 2 in P_fin,0(S)", &Runner::omega_cmd);
    s->add_option("--a", o.n2, "Nonzero element a of S")->required();
    s->add_option("--n", o.n, "n >= 1")->required();
  }
  sets(add("dcs", "Descriptor (d,S,T) of the divisor-closed submonoid generated by a set", &Runner::dcs_cmd),
       "Set literal");
  descriptor_flags(add("mdcs", "Maximal divisor-closed submonoids of a descriptor", &Runner::mdcs_cmd));
  descriptor_flags(add("fingerprint", "Nested MDCS counts", &Runner::fingerprint_cmd));
  descriptor_flags(add("gen-dcs", "A set generating a descriptor", &Runner::gen_dcs_cmd));
  {
    auto* s = add("witnesses", "Noncancellative and torsion identities", &Runner::witnesses_cmd);
    descriptor_flags(s);
    s->add_option("--n", o.n, "n >= n* (default n*)");
  }
  {
    auto* s = add("density-exact", "Exact atom and decomposable counts", &Runner::density_exact_cmd);
    s->add_option("--n", o.n, "N")->required();
    s->add_option("--variant", o.variant, "restricted, all or unrestricted")->capture_default_str();
    s->add_option("--max-exponent", o.max_exponent, "Largest enumerated power set exponent")->capture_default_str();
  }
  {
    auto* s = add("density-sample", "Monte Carlo fraction of Dec(N) among subsets of [0,N]", &Runner::density_sample_cmd);
    s->add_option("--n", o.n, "N")->required();
    s->add_option("--trials", o.trials, "Number of samples")->capture_default_str();
  }
  add("density-limit", "Limit of the atom proportion in P_fin(S)", &Runner::density_limit_cmd);
  {
    auto* s = add("growth", "log2 |Dec(N)| / N for N up to --n", &Runner::growth_cmd);
    s->add_option("--n", o.n, "Largest N")->required();
    s->add_option("--max-exponent", o.max_exponent, "Largest enumerated power set exponent")->capture_default_str();
  }
  {
    auto* s = add("find-lengthset", "Search a set whose set of lengths is the given set", &Runner::find_lengthset_cmd);
    sets(s, "Target set of lengths as a set literal");
    s->add_option("--max-element", o.max_element, "Largest max of a candidate")->capture_default_str();
    s->add_option("--max-cardinality", o.max_cardinality, "Largest candidate size")->capture_default_str();
  }
  sets(add("nstar", "Threshold of the large-n structure of nA", &Runner::nstar_cmd), "Set literal");
  sets(add("cancel-refute", "B != nA with A + B = (n+1)A", &Runner::cancel_refute_cmd), "Set literal");
  sets(add("groth-class", "Class of [A] - [B]; with C D also compare and search E", &Runner::groth_class_cmd),
       "Set literals A B [C D]");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    if (app.get_subcommands().empty()) {
      for (const std::string& extra : app.remaining()) {
        if (!extra.empty() && extra[0] != '-') {
          err << "usage error: unknown subcommand '" << extra << "'\n";
          return kExitUsage;
        }
      }
    }
    app.exit(e, err, err);
    return kExitUsage;
  }

  std::string name;
  for (const CLI::App* sub : app.get_subcommands()) {
    name = sub->get_name();
  }
  {
    for (const std::string& extra : app.remaining(true)) {
      if (extra.size() > 1 && extra[0] == '-' && !std::isdigit(static_cast<unsigned char>(extra[1]))) {
        err << "usage error: unknown option " << extra << "\n";
        return kExitUsage;
      }
      o.sets.push_back(extra);
    }
  }
  if (!o.sets.empty() && takes_sets.count(name) == 0) {
    err << "usage error: " << name << " takes no positional arguments\n";
    return kExitUsage;
  }
  const Runner runner(o);
  try {
    const Output result = handlers.at(name)(runner);
    if (o.format == "json") {
      out << result.json.dump() << "\n";
    } else if (o.format == "csv") {
      out << to_csv(result);
    } else {
      out << result.plain;
    }
    if (result.incomplete) {
      err << "budget exhausted: result is partial (raise --budget)\n";
      return kExitDomain;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "malformed literal: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kExitDomain;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitDomain;
  } catch (const UniverseError& e) {
    err << "universe bound exceeded: " << e.what() << "\n";
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace powmon::cli
