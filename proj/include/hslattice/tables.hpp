#pragma once

#include <iosfwd>
#include <optional>

#include "hslattice/kernels.hpp"

namespace hsl {

/// Built-in benchmark table suites (ids 1-4): CSV comparisons of the Merton
/// series, the full lattice and the truncated lattice over fixed parameter
/// grids. Columns for methods not implemented here (amin, dai, simonato,
/// benchmark) are emitted blank so the layout matches the reference tables.
struct TableOptions {
    int table_id = 1;
    std::optional<char> panel;  // 'A'.. ; all panels when unset
    int nu = 3;
    double c = 1.0;
    bool timings = false;       // adds wall-time columns; off keeps output byte-stable
    Exec exec = Exec::parallel;
};

void write_table_csv(std::ostream& os, const TableOptions& opt);

}  // namespace hsl
