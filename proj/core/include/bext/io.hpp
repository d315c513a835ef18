/* SPDX-License-Identifier: Apache-2.0 */

// Structured-text (JSON) records and SVG rendering.  Every number is an exact {num, den}
// pair; integers that do not fit in 64 bits are written as decimal strings.

#pragma once

#include "bext/boundary_extension.hpp"

#include <string>

namespace bext::io {

std::string write_phi(const FunctionApprox& phi);
std::string write_boundary(const CompactApprox& bd);
std::string write_ulac(const ULACApprox& g);
std::string write_point(const PointApprox& p);
std::string write_config(const Configuration& c);
/// Run report with exact output rectangle, a 20-digit outward decimal rendering and clause logs.
std::string write_report(const RunReport& r, long wall_time_ms);

// Readers throw SchemaError on malformed text, zero denominators or invalid shapes.
FunctionApprox read_phi(const std::string& text);
CompactApprox read_boundary(const std::string& text);
ULACApprox read_ulac(const std::string& text);
PointApprox read_point(const std::string& text);
Configuration read_config(const std::string& text);
/// Output rectangle of a run.report.
RationalRect read_report_output(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// "[lo, hi] x [lo, hi]" with 20 digits, rounded outward.  Not authoritative.
std::string decimal_rect(const RationalRect& r);

struct PlotScene {
  const FunctionApprox* phi = nullptr;
  const CompactApprox* bd = nullptr;
  const Configuration* config = nullptr;
  const RationalRect* output = nullptr;
};

/// SVG 1.1 drawing: cover rects, faint value rects, chain links per arc chain, output rect.
std::string render_svg(const PlotScene& scene);

}  // namespace bext::io
