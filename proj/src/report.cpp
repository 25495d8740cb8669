#include "knotgeo/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace knotgeo {

namespace {

using nlohmann::json;

json big_to_json(const BigInt& v) {
  if (auto n = to_int64(v)) return json(*n);
  return json(v.str());
}

json rational_to_json(const Rational& r) {
  if (is_integer(r)) return big_to_json(boost::multiprecision::numerator(r));
  return json(rational_to_string(r));
}

json point_to_json(const LatticePoint& pt) {
  return json{{"e", pt.e}, {"h", pt.h}};
}

bool special_obstruction(const Certificate& c) {
  using K = Certificate::Kind;
  return c.kind == K::KleinArf || c.kind == K::DeltaLine ||
         c.kind == K::DownwardPropagation || c.kind == K::RegistryForbidden;
}

// Exact fixed-point rendering with three decimals, round half away from zero.
std::string fixed3(const Rational& r) {
  const bool neg = r < 0;
  const Rational a = neg ? -r : r;
  const BigInt scaled = rational_floor(a * 1000 + Rational(1, 2));
  const BigInt whole = scaled / 1000;
  const BigInt frac = scaled % 1000;
  std::ostringstream os;
  if (neg && (whole != 0 || frac != 0)) os << "-";
  os << whole.str();
  if (frac != 0) {
    std::string f = frac.str();
    while (f.size() < 3) f = "0" + f;
    while (!f.empty() && f.back() == '0') f.pop_back();
    os << "." << f;
  }
  return os.str();
}

}  // namespace

ReportDocument build_report(const InvariantBundle& b, const Box& box, const Registry& reg) {
  ReportDocument doc;
  doc.summary = symbolic_summary(b);
  doc.box = box;
  doc.points = classify_box(b, box);
  std::ostringstream hash;
  hash << "fnv1a64:" << std::hex << reg.hash();
  doc.registry_hash = hash.str();
  return doc;
}

std::string emit_json(const ReportDocument& doc) {
  const GeographyReport& rep = doc.summary;
  const InvariantBundle& b = rep.bundle;

  json root;
  root["knot"] = to_text(b.knot);
  root["box"] = {{"e_min", doc.box.e_min}, {"e_max", doc.box.e_max}, {"h_max", doc.box.h_max}};

  json inv;
  inv["sigma"] = big_to_json(b.sigma);
  inv["upsilon1"] = rational_to_json(b.upsilon1);
  inv["arf"] = b.arf;
  inv["det"] = big_to_json(b.det);
  inv["delta"] = b.delta ? rational_to_json(*b.delta) : json(nullptr);
  inv["g4_upper"] = big_to_json(b.g4_upper);
  root["invariants"] = inv;

  json g4;
  g4["lower"] = big_to_json(rep.gamma4_lower);
  g4["upper"] = big_to_json(rep.gamma4_upper);
  g4["lower_certificate"] = rep.gamma4_lower_certificate;
  g4["upper_certificate"] = rep.gamma4_upper_certificate;
  root["gamma4"] = g4;

  json points = json::array();
  for (const PointClass& pc : doc.points) {
    json p;
    p["e"] = pc.point.e;
    p["h"] = pc.point.h;
    p["status"] = status_name(pc.status);
    p["certificate"] = pc.certificate.str();
    points.push_back(p);
  }
  root["points"] = points;

  json summary;
  json apexes = json::array();
  for (const Apex& a : rep.realizable_wedges) {
    json ax = point_to_json(a.point);
    ax["certificate"] = a.certificate.str();
    apexes.push_back(ax);
  }
  summary["apexes"] = apexes;
  summary["r1_center"] = rational_to_json(rep.r1.center);
  summary["r2_center"] = rational_to_json(rep.r2.center);
  if (rep.delta_line) {
    summary["delta_line"] = {{"arm", rep.delta_line->right_arm ? "right" : "left"},
                             {"offset", big_to_json(rep.delta_line->sigma_offset)}};
  } else {
    summary["delta_line"] = nullptr;
  }
  json kleins = json::array();
  for (const auto& [pt, cert] : rep.klein_points) kleins.push_back(point_to_json(pt));
  summary["klein_points"] = kleins;
  switch (rep.unknown.kind) {
    case UnknownSummary::Kind::Finite: summary["unknown_kind"] = "finite"; break;
    case UnknownSummary::Kind::Rays: summary["unknown_kind"] = "rays"; break;
    case UnknownSummary::Kind::Unstructured: summary["unknown_kind"] = "unstructured"; break;
  }
  json upoints = json::array();
  for (const LatticePoint& pt : rep.unknown.points) upoints.push_back(point_to_json(pt));
  summary["unknown_points"] = upoints;
  json rays = json::array();
  for (const Ray& r : rep.unknown.rays)
    rays.push_back(json{{"start", point_to_json(r.start)},
                        {"direction", json::array({r.direction_e, 1})}});
  summary["unknown_rays"] = rays;
  summary["sweep_bound"] = rep.unknown.sweep_bound;
  root["summary"] = summary;

  json meta;
  meta["engine_version"] = kEngineVersion;
  meta["registry_hash"] = doc.registry_hash;
  meta["flags"] = {{"allow_extrapolated_upsilon_base", b.options.allow_extrapolated_upsilon_base},
                   {"mirror_delta", b.options.mirror_delta},
                   {"upsilon1_extrapolated", b.upsilon1_extrapolated}};
  root["meta"] = meta;

  return root.dump(2) + "\n";
}

std::string reemit_json(const std::string& json_text) {
  return json::parse(json_text).dump(2) + "\n";
}

std::string emit_ascii(const ReportDocument& doc) {
  const Box& box = doc.box;
  if (box.empty()) return "";
  const std::int64_t width = box.e_max - box.e_min + 1;
  if (width > 200 || box.h_max > 60)
    throw std::domain_error("emit_ascii: box exceeds 200x60 cells");

  std::vector<std::string> grid(static_cast<std::size_t>(box.h_max),
                                std::string(static_cast<std::size_t>(width), '.'));
  for (const PointClass& pc : doc.points) {
    char glyph = '.';
    if (pc.status == Status::Realizable) glyph = '#';
    else if (pc.status == Status::Unknown) glyph = '?';
    else if (special_obstruction(pc.certificate)) glyph = 'x';
    grid[static_cast<std::size_t>(pc.point.h - 1)]
        [static_cast<std::size_t>(pc.point.e - box.e_min)] = glyph;
  }

  std::ostringstream os;
  for (std::int64_t h = box.h_max; h >= 1; --h) {
    os << "h=";
    os.width(3);
    os << h << " |" << grid[static_cast<std::size_t>(h - 1)] << "\n";
  }
  os << "      +" << std::string(static_cast<std::size_t>(width), '-') << "\n";
  // e labels every 4 columns.
  std::string labels(static_cast<std::size_t>(width) + 8, ' ');
  for (std::int64_t e = box.e_min; e <= box.e_max; e += 4) {
    const std::string label = std::to_string(e);
    const std::size_t col = static_cast<std::size_t>(e - box.e_min) + 7;
    bool free_slot = col + label.size() <= labels.size();
    for (std::size_t i = 0; free_slot && i < label.size(); ++i)
      if (labels[col + i] != ' ') free_slot = false;
    if (free_slot)
      for (std::size_t i = 0; i < label.size(); ++i) labels[col + i] = label[i];
  }
  while (!labels.empty() && labels.back() == ' ') labels.pop_back();
  os << "e:" << labels.substr(2) << "\n";
  return os.str();
}

namespace {

struct SvgMapper {
  Box box;
  static constexpr std::int64_t kMargin = 48;
  static constexpr std::int64_t kXUnit = 12;  // per unit of e
  static constexpr std::int64_t kYUnit = 24;  // per unit of h

  Rational x(const Rational& e) const { return (e - box.e_min) * kXUnit + kMargin; }
  Rational y(const Rational& h) const { return (box.h_max - h) * kYUnit + kMargin; }
  std::int64_t width() const {
    return (box.e_max - box.e_min) * kXUnit + 2 * kMargin;
  }
  std::int64_t height() const { return (box.h_max - 1) * kYUnit + 2 * kMargin; }
};

void svg_wedge_boundary(std::ostringstream& os, const SvgMapper& map, const Wedge& w,
                        const char* color, const char* dash) {
  // Boundary h = |center - e|/2 + base clipped to the box top.
  const Rational h_top = Rational(map.box.h_max);
  if (Rational(w.base) > h_top) return;
  const Rational e_left = w.center - 2 * (h_top - w.base);
  const Rational e_right = w.center + 2 * (h_top - w.base);
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
  if (dash[0] != '\0') os << " stroke-dasharray=\"" << dash << "\"";
  os << " points=\"" << fixed3(map.x(e_left)) << "," << fixed3(map.y(h_top)) << " "
     << fixed3(map.x(w.center)) << "," << fixed3(map.y(w.base)) << " "
     << fixed3(map.x(e_right)) << "," << fixed3(map.y(h_top)) << "\" />\n";
}

}  // namespace

std::string emit_svg(const ReportDocument& doc) {
  const Box& box = doc.box;
  if (box.empty()) throw std::domain_error("emit_svg: empty box");
  const std::int64_t cells = (box.e_max - box.e_min + 1) * box.h_max;
  if (cells > 10000) throw std::domain_error("emit_svg: box exceeds 10^4 points");
  const GeographyReport& rep = doc.summary;
  const SvgMapper map{box};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << map.width()
     << "\" height=\"" << map.height() << "\" viewBox=\"0 0 " << map.width() << " "
     << map.height() << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\" />\n";
  os << "<text x=\"" << SvgMapper::kMargin << "\" y=\"20\" font-family=\"monospace\" "
     << "font-size=\"13\">" << to_text(rep.bundle.knot)
     << "  [# realizable  ? unknown  x obstructed  . excluded]</text>\n";

  for (const Apex& a : rep.realizable_wedges)
    svg_wedge_boundary(os, map, Wedge{Rational(a.point.e), Rational(a.point.h)},
                       "#2a8f2a", "");
  svg_wedge_boundary(os, map, rep.r1, "#2255cc", "");
  svg_wedge_boundary(os, map, rep.r2, "#7733bb", "6,3");

  if (rep.delta_line) {
    // h = e/2 - sigma (right arm) or h = -e/2 + sigma reflected.
    const Rational sigma(rep.delta_line->sigma_offset);
    const bool right = rep.delta_line->right_arm;
    const Rational h1 = Rational(1);
    const Rational h2 = Rational(box.h_max);
    const Rational e1 = right ? Rational(2 * (sigma + h1)) : Rational(2 * (sigma - h1));
    const Rational e2 = right ? Rational(2 * (sigma + h2)) : Rational(2 * (sigma - h2));
    os << "<line stroke=\"#cc2222\" stroke-width=\"1.5\" stroke-dasharray=\"4,3\" x1=\""
       << fixed3(map.x(e1)) << "\" y1=\"" << fixed3(map.y(h1)) << "\" x2=\""
       << fixed3(map.x(e2)) << "\" y2=\"" << fixed3(map.y(h2)) << "\" />\n";
  }

  for (const PointClass& pc : doc.points) {
    const Rational cx = map.x(Rational(pc.point.e));
    const Rational cy = map.y(Rational(pc.point.h));
    const bool obstructed =
        pc.status == Status::NotRealizable && special_obstruction(pc.certificate);
    const char* fill = pc.status == Status::Realizable ? "#2a8f2a"
                       : pc.status == Status::Unknown  ? "#e09a20"
                       : obstructed                    ? "#cc2222"
                                                       : "#c9c9c9";
    os << "<circle cx=\"" << fixed3(cx) << "\" cy=\"" << fixed3(cy)
       << "\" r=\"4\" fill=\"" << fill << "\" />\n";
    if (obstructed) {
      // x marker over the dot, matching the dashed obstruction line style.
      os << "<path stroke=\"#881111\" stroke-width=\"1.5\" d=\"M " << fixed3(cx - 4)
         << " " << fixed3(cy - 4) << " L " << fixed3(cx + 4) << " " << fixed3(cy + 4)
         << " M " << fixed3(cx - 4) << " " << fixed3(cy + 4) << " L " << fixed3(cx + 4)
         << " " << fixed3(cy - 4) << "\" />\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace knotgeo
