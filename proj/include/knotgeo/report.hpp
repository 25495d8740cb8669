#pragma once

#include <string>
#include <vector>

#include "knotgeo/geography.hpp"

namespace knotgeo {

inline constexpr const char* kEngineVersion = "knotgeo 0.1.0";

struct ReportDocument {
  GeographyReport summary;
  Box box;
  std::vector<PointClass> points;  // parity-valid points of the box, (h,e) order
  std::string registry_hash;
};

/// Runs the engine over the box and packages the result.
ReportDocument build_report(const InvariantBundle& b, const Box& box, const Registry& reg);

/// Canonical JSON: sorted keys, two-space indent, rationals as bare integers
/// or "a/b" strings, no floats. emit -> parse -> emit is byte-identical.
std::string emit_json(const ReportDocument& doc);

/// Re-emits parsed JSON canonically (round-trip check helper).
std::string reemit_json(const std::string& json_text);

/// Text grid, one row per h (descending): '#' realizable, '?' unknown,
/// 'x' ruled out by a pointwise obstruction (Klein/delta/propagation/registry),
/// '.' ruled out by wedge bounds or parity. Box must fit in 200x60 cells.
std::string emit_ascii(const ReportDocument& doc);

/// Deterministic standalone SVG: wedge boundaries for R1, R2 and each apex
/// wedge, status-colored lattice dots, the delta line dashed with x markers.
/// Box must contain at most 10^4 cells.
std::string emit_svg(const ReportDocument& doc);

}  // namespace knotgeo
