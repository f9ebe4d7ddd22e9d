#pragma once

#include <string>

#include "wos/bench/record.hpp"

namespace wos::bench {

enum class PlotKind { path_overlay, loglog, box_timing };

PlotKind parse_plot_kind(const std::string& name);
const char* to_string(PlotKind kind);

/// Renders a record as a self-contained SVG document. Output depends only on
/// the record. Throws ConfigError naming the missing series when the record
/// lacks what the plot needs.
std::string emit_plot(const RunRecord& record, PlotKind kind);

/// emit_plot to a file. Nothing is written when rendering fails.
void write_plot(const RunRecord& record, PlotKind kind, const std::string& path);

}  // namespace wos::bench
