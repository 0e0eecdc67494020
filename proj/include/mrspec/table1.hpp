#pragma once

// Published reference energies for A = 2b in atomic units, and their
// recomputation from the closed form.

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mrspec {

struct TableColumn
{
    int D;
    double alpha;          ///< representative alpha; the "0,1" column uses 0
    std::string_view label; ///< "0.75", "0,1" or "1.5"
};

/// Column order of the reference table: D = 2 then D = 4, each with
/// alpha = 0.75, (0 or 1), 1.5.
std::span<TableColumn const, 6> table_columns();

struct ReferenceRow
{
    std::string_view state;
    double inv_b;
    std::array<double, 6> published;
};

std::span<ReferenceRow const> reference_rows();

struct TableCell
{
    std::string state;
    double inv_b;
    std::string alpha_label;
    int D;
    double published;
    double computed;
    double diff; ///< computed - published
    bool suspected_erratum;
};

inline constexpr double table_tolerance = 5e-9;

/// Recomputes every cell. The "0,1" column is evaluated at alpha = 0 and at
/// alpha = 1; throws std::logic_error if the two differ in any bit.
std::vector<TableCell> reproduce_table(double tolerance = table_tolerance);

} // namespace mrspec
