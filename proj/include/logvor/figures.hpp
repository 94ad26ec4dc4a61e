#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace logvor {

/// Rectangular sample of a slice: coordinate columns followed by the
/// in_spectrahedron and in_cell indicator columns.
struct FigureGrid {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::vector<std::string> figure_names();

/// Points per axis used when grid <= 0 is requested.
int default_grid(std::string_view name);

/// Throws UnknownFigure for names outside figure_names().
FigureGrid figure_grid(std::string_view name, int grid = 0);

void write_csv(const FigureGrid& fig, std::ostream& out);

} // namespace logvor
