#include "knotgeo/registry.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace knotgeo {

namespace {

using nlohmann::json;

// delta(T(5,9)) = delta(T(5,13)) = 4; double branched covers are the
// Brieskorn spheres Sigma(2,5,9) and Sigma(2,5,13).
const char* kBuiltinRegistry = R"JSON({
  "delta": [
    {"p": 5, "q": 9, "delta": 4,
     "provenance": "d-invariant of Sigma(2,5,9) (Tweedy; Nemethi graded-roots algorithm)"},
    {"p": 5, "q": 13, "delta": 4,
     "provenance": "d-invariant of Sigma(2,5,13) (Tweedy; Nemethi graded-roots algorithm)"}
  ],
  "named": [
    {"name": "4_1", "sigma": 0, "upsilon1": 0, "arf": 1, "det": 5,
     "g4_upper": 1, "gamma4_exact": 2,
     "apexes": [{"e": -4, "h": 2}, {"e": 4, "h": 2}],
     "forbidden": [
       {"kind": "h_level", "h": 1,
        "provenance": "Viro: the figure-eight knot bounds no Moebius band in the 4-ball"}
     ]}
  ]
})JSON";

Rational rational_from_json(const json& j, const char* what) {
  if (j.is_number_integer()) return Rational(BigInt(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw registry_error(std::string(what) + ": " + e.what());
    }
  }
  throw registry_error(std::string(what) + ": expected integer or \"a/b\" string");
}

json rational_to_json(const Rational& r) {
  if (is_integer(r)) {
    auto n = to_int64(boost::multiprecision::numerator(r));
    if (n) return json(*n);
  }
  return json(rational_to_string(r));
}

std::int64_t int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw registry_error(std::string("registry entry missing integer field '") + key + "'");
  return j.at(key).get<std::int64_t>();
}

}  // namespace

Registry Registry::builtin() {
  return from_json_text(kBuiltinRegistry);
}

Registry Registry::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw registry_error("cannot open registry file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

Registry Registry::from_json_text(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw registry_error(std::string("registry JSON: ") + e.what());
  }
  if (!doc.is_object()) throw registry_error("registry JSON: top level must be an object");

  Registry reg;
  for (const json& d : doc.value("delta", json::array())) {
    DeltaEntry entry;
    std::int64_t p = int_field(d, "p");
    std::int64_t q = int_field(d, "q");
    if (p < 1 || q < 1) throw registry_error("delta entry: torus indices must be >= 1");
    if (std::gcd(p, q) != 1) throw registry_error("delta entry: gcd(p,q) != 1");
    entry.knot = TorusKnot{p, q}.normalized();
    if (entry.knot.is_unknot()) throw registry_error("delta entry: T(1,q) is the unknot");
    if (!d.contains("delta")) throw registry_error("delta entry missing 'delta'");
    entry.delta = rational_from_json(d.at("delta"), "delta entry");
    entry.provenance = d.value("provenance", std::string("unspecified"));
    reg.delta_[{entry.knot.p, entry.knot.q}] = std::move(entry);
  }

  for (const json& n : doc.value("named", json::array())) {
    NamedEntry entry;
    if (!n.contains("name") || !n.at("name").is_string())
      throw registry_error("named entry missing 'name'");
    entry.name = n.at("name").get<std::string>();
    if (entry.name == kUnknotName)
      throw registry_error("named entry: 'U' is reserved for the unknot");
    entry.sigma = int_field(n, "sigma");
    entry.upsilon1 = rational_from_json(n.value("upsilon1", json(0)), "upsilon1");
    entry.arf = static_cast<int>(int_field(n, "arf"));
    entry.det = int_field(n, "det");
    entry.g4_upper = int_field(n, "g4_upper");
    if (n.contains("gamma4_exact")) entry.gamma4_exact = int_field(n, "gamma4_exact");
    if (n.contains("delta") && !n.at("delta").is_null())
      entry.delta = rational_from_json(n.at("delta"), "named delta");
    for (const json& a : n.value("apexes", json::array()))
      entry.apexes.push_back(LatticePoint{int_field(a, "e"), int_field(a, "h")});
    for (const json& f : n.value("forbidden", json::array())) {
      ForbiddenFact fact;
      const std::string kind = f.value("kind", std::string());
      if (kind == "h_level") {
        fact.kind = ForbiddenFact::Kind::HLevel;
        fact.h = int_field(f, "h");
      } else if (kind == "point") {
        fact.kind = ForbiddenFact::Kind::Point;
        fact.e = int_field(f, "e");
        fact.h = int_field(f, "h");
      } else {
        throw registry_error("forbidden fact: unknown kind '" + kind + "'");
      }
      fact.provenance = f.value("provenance", std::string("unspecified"));
      entry.forbidden.push_back(std::move(fact));
    }
    reg.named_[entry.name] = std::move(entry);
  }

  reg.validate();
  return reg;
}

void Registry::validate() const {
  for (const auto& [name, e] : named_) {
    if (e.sigma % 2 != 0)
      throw registry_error("named entry '" + name + "': sigma must be even");
    if (e.arf != 0 && e.arf != 1)
      throw registry_error("named entry '" + name + "': arf must be 0 or 1");
    if (e.det <= 0 || e.det % 2 == 0)
      throw registry_error("named entry '" + name + "': det must be odd and positive");
    if (e.g4_upper < 0)
      throw registry_error("named entry '" + name + "': g4_upper must be >= 0");
    if (e.gamma4_exact && *e.gamma4_exact < 1)
      throw registry_error("named entry '" + name + "': gamma4_exact must be >= 1");
    const Wedge r1{Rational(2 * e.sigma), 0};
    const Wedge r2{Rational(4) * e.upsilon1, 0};
    for (const LatticePoint& apex : e.apexes) {
      if (apex.h < 1 || !apex.parity_valid() || !r1.contains(apex) || !r2.contains(apex))
        throw registry_error("named entry '" + name + "': apex " + apex.str() +
                             " violates parity or the signature/Upsilon bounds");
      for (const ForbiddenFact& f : e.forbidden) {
        const bool hit = (f.kind == ForbiddenFact::Kind::HLevel)
                             ? apex.h <= f.h
                             : (apex == LatticePoint{f.e, f.h});
        if (hit)
          throw registry_error("named entry '" + name + "': apex " + apex.str() +
                               " conflicts with a forbidden fact (" + f.provenance + ")");
      }
    }
    for (const ForbiddenFact& f : e.forbidden)
      if (f.h < 1)
        throw registry_error("named entry '" + name + "': forbidden h must be >= 1");
  }
}

void Registry::merge_from(const Registry& user, std::ostream* warnings) {
  for (const auto& [key, entry] : user.delta_) {
    auto it = delta_.find(key);
    if (it != delta_.end() && warnings &&
        (it->second.delta != entry.delta || it->second.provenance != entry.provenance))
      *warnings << "warning: user registry overrides delta for T(" << key.first << ","
                << key.second << ")\n";
    delta_[key] = entry;
  }
  for (const auto& [name, entry] : user.named_) {
    auto it = named_.find(name);
    if (it != named_.end() && warnings)
      *warnings << "warning: user registry overrides named knot '" << name << "'\n";
    named_[name] = entry;
  }
  validate();
}

std::optional<DeltaEntry> Registry::delta_for(const TorusKnot& tk) const {
  const TorusKnot n = tk.normalized();
  auto it = delta_.find({n.p, n.q});
  if (it == delta_.end()) return std::nullopt;
  return it->second;
}

const NamedEntry* Registry::named(const std::string& name) const {
  auto it = named_.find(name);
  return it == named_.end() ? nullptr : &it->second;
}

std::set<std::string> Registry::known_names() const {
  std::set<std::string> names{kUnknotName};
  for (const auto& [name, _] : named_) names.insert(name);
  return names;
}

std::string Registry::canonical_json() const {
  json doc;
  doc["delta"] = json::array();
  for (const auto& [key, e] : delta_) {
    json d;
    d["p"] = key.first;
    d["q"] = key.second;
    d["delta"] = rational_to_json(e.delta);
    d["provenance"] = e.provenance;
    doc["delta"].push_back(d);
  }
  doc["named"] = json::array();
  for (const auto& [name, e] : named_) {
    json n;
    n["name"] = name;
    n["sigma"] = to_int64_strict(e.sigma, "sigma");
    n["upsilon1"] = rational_to_json(e.upsilon1);
    n["arf"] = e.arf;
    n["det"] = to_int64_strict(e.det, "det");
    n["g4_upper"] = e.g4_upper;
    if (e.gamma4_exact) n["gamma4_exact"] = *e.gamma4_exact;
    if (e.delta) n["delta"] = rational_to_json(*e.delta);
    n["apexes"] = json::array();
    for (const LatticePoint& a : e.apexes) n["apexes"].push_back({{"e", a.e}, {"h", a.h}});
    n["forbidden"] = json::array();
    for (const ForbiddenFact& f : e.forbidden) {
      json fact;
      fact["kind"] = f.kind == ForbiddenFact::Kind::HLevel ? "h_level" : "point";
      fact["h"] = f.h;
      if (f.kind == ForbiddenFact::Kind::Point) fact["e"] = f.e;
      fact["provenance"] = f.provenance;
      n["forbidden"].push_back(fact);
    }
    doc["named"].push_back(n);
  }
  return doc.dump();
}

std::uint64_t Registry::hash() const {
  const std::string text = canonical_json();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace knotgeo
