#ifndef CHARTPARSER_TABLE_HPP
#define CHARTPARSER_TABLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "chartparser/raster.hpp"

namespace chartparser {

struct SeriesColumn {
    std::string name;
    Rgb color;
    std::vector<std::optional<double>> values;  // one slot per category

    friend bool operator==(const SeriesColumn&, const SeriesColumn&) = default;
};

/// Final extraction result: one row per category, one column per series.
struct ChartTable {
    std::string x_label;  // category-axis label, whichever side it was drawn on
    std::string y_label;  // value-axis label
    std::vector<std::string> categories;
    std::vector<SeriesColumn> series;

    friend bool operator==(const ChartTable&, const ChartTable&) = default;
};

}  // namespace chartparser

#endif
