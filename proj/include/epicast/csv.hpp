#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "epicast/series.hpp"

namespace epicast {

// Schemas:
//   series: `date,value`
//   panel:  `date,<national>,<state1>,<state2>,...`
// ISO-8601 dates, '.' decimal separator, no thousands separators.

UnivariateSeries parse_series_csv(const std::filesystem::path& path);
UnivariateSeries parse_series_csv(std::istream& in, std::string name);

HierarchicalPanel parse_panel_csv(const std::filesystem::path& path);
HierarchicalPanel parse_panel_csv(std::istream& in);

void write_series_csv(std::ostream& out, const UnivariateSeries& series);
void write_panel_csv(std::ostream& out, const HierarchicalPanel& panel);

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

}  // namespace epicast
