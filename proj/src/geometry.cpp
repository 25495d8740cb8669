#include "knotgeo/geometry.hpp"

#include <sstream>

namespace knotgeo {

std::string status_name(Status s) {
  switch (s) {
    case Status::Realizable: return "realizable";
    case Status::NotRealizable: return "not_realizable";
    case Status::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {
const char* kind_name(Certificate::Kind k) {
  using K = Certificate::Kind;
  switch (k) {
    case K::MoebiusConstruction: return "moebius_construction";
    case K::GenusConstruction: return "genus_construction";
    case K::CrosscapSum: return "crosscap_sum";
    case K::SummandCombination: return "summand_combination";
    case K::RegistryApex: return "registry_apex";
    case K::ParityViolation: return "parity_violation";
    case K::SignatureWedge: return "signature_wedge";
    case K::UpsilonWedge: return "upsilon_wedge";
    case K::KleinArf: return "klein_arf";
    case K::DeltaLine: return "delta_line";
    case K::DownwardPropagation: return "downward_propagation";
    case K::RegistryForbidden: return "registry_forbidden";
  }
  return "?";
}
}  // namespace

std::string Certificate::str() const {
  using K = Kind;
  std::ostringstream os;
  os << kind_name(kind);
  switch (kind) {
    case K::MoebiusConstruction:
      os << "(" << e0 << ")";
      break;
    case K::CrosscapSum:
      os << "(" << parent.str() << ")";
      break;
    case K::SummandCombination: {
      os << "(";
      for (std::size_t i = 0; i < parents.size(); ++i) {
        if (i) os << "+";
        os << parents[i].str();
      }
      os << ")";
      break;
    }
    case K::RegistryApex:
    case K::RegistryForbidden:
      os << "(" << provenance << ")";
      break;
    case K::KleinArf:
      os << (negative_definite ? "(negative_definite)" : "(positive_definite)");
      break;
    case K::DeltaLine:
      os << (right_arm ? "(right)" : "(left)");
      break;
    case K::DownwardPropagation:
      os << "(from " << parent.str() << ", " << kind_name(root_kind) << ")";
      break;
    default:
      break;
  }
  return os.str();
}

Certificate Certificate::moebius(std::int64_t e0) {
  Certificate c;
  c.kind = Kind::MoebiusConstruction;
  c.e0 = e0;
  return c;
}
Certificate Certificate::genus() {
  Certificate c;
  c.kind = Kind::GenusConstruction;
  return c;
}
Certificate Certificate::crosscap(LatticePoint parent) {
  Certificate c;
  c.kind = Kind::CrosscapSum;
  c.parent = parent;
  return c;
}
Certificate Certificate::combination(std::vector<LatticePoint> parents) {
  Certificate c;
  c.kind = Kind::SummandCombination;
  c.parents = std::move(parents);
  return c;
}
Certificate Certificate::registry_apex(std::string provenance) {
  Certificate c;
  c.kind = Kind::RegistryApex;
  c.provenance = std::move(provenance);
  return c;
}
Certificate Certificate::parity() {
  return Certificate{};
}
Certificate Certificate::signature_wedge() {
  Certificate c;
  c.kind = Kind::SignatureWedge;
  return c;
}
Certificate Certificate::upsilon_wedge() {
  Certificate c;
  c.kind = Kind::UpsilonWedge;
  return c;
}
Certificate Certificate::klein(bool negative_definite) {
  Certificate c;
  c.kind = Kind::KleinArf;
  c.negative_definite = negative_definite;
  return c;
}
Certificate Certificate::delta_line(bool right_arm) {
  Certificate c;
  c.kind = Kind::DeltaLine;
  c.right_arm = right_arm;
  return c;
}
Certificate Certificate::propagation(LatticePoint from, Kind root) {
  Certificate c;
  c.kind = Kind::DownwardPropagation;
  c.parent = from;
  c.root_kind = root;
  return c;
}
Certificate Certificate::registry_forbidden(std::string provenance) {
  Certificate c;
  c.kind = Kind::RegistryForbidden;
  c.provenance = std::move(provenance);
  return c;
}

}  // namespace knotgeo
