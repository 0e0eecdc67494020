#include "mrspec/table1.hpp"

#include "mrspec/spectrum.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace mrspec {

namespace {

constexpr std::array<TableColumn, 6> columns{{
    {2, 0.75, "0.75"},
    {2, 0.0, "0,1"},
    {2, 1.5, "1.5"},
    {4, 0.75, "0.75"},
    {4, 0.0, "0,1"},
    {4, 1.5, "1.5"},
}};

// One entry per printed row, in print order. Columns as in table_columns().
// Values copied digit for digit, including the cells that disagree with the
// closed form (6d D=2 alpha=0.75; 5p D=4 all three alpha columns).
constexpr ReferenceRow rows[] = {
    {"2p", 0.025, {-0.241087728, -0.209898003, -0.140949065, -0.070734690, -0.067988281, -0.058898861}},
    {"2p", 0.050, {-0.227946676, -0.197925347, -0.131737328, -0.059344084, -0.056953125, -0.049054156}},
    {"2p", 0.075, {-0.215173874, -0.186304253, -0.122836866, -0.048952839, -0.046894531, -0.040109106}},
    {"2p", 0.100, {-0.202769319, -0.175034722, -0.114247678, -0.039560954, -0.037812500, -0.032063712}},
    {"3p", 0.025, {-0.074279113, -0.067988281, -0.051933432, -0.030209821, -0.029273358, -0.026068346}},
    {"3p", 0.050, {-0.062813564, -0.056953125, -0.042142549, -0.020395577, -0.019644452, -0.017092049}},
    {"3p", 0.075, {-0.052308602, -0.046894531, -0.033373420, -0.012502916, -0.011929608, -0.010003237}},
    {"3p", 0.100, {-0.042764227, -0.037812500, -0.025626042, -0.006531840, -0.006128827, -0.004801908}},
    {"3d", 0.025, {-0.070734690, -0.067988281, -0.058898861, -0.029833656, -0.029273358, -0.027228277}},
    {"3d", 0.050, {-0.059344084, -0.056953125, -0.049054156, -0.020047209, -0.019644452, -0.018176769}},
    {"3d", 0.075, {-0.048952839, -0.046894531, -0.040109106, -0.012199670, -0.011929608, -0.010947973}},
    {"4p", 0.025, {-0.031448122, -0.029273358, -0.023381941, -0.014180352, -0.013773389, -0.012357598}},
    {"4p", 0.050, {-0.021545731, -0.019644452, -0.014606136, -0.006296995, -0.006019483, -0.005072360}},
    {"4p", 0.075, {-0.013510134, -0.011929608, -0.007885467, -0.001570215, -0.001429639, -0.000978205}},
    {"4d", 0.025, {-0.030209821, -0.029273358, -0.026068346, -0.014011823, -0.013773389, -0.012892982}},
    {"4d", 0.050, {-0.020395577, -0.019644452, -0.017092049, -0.006162813, -0.006019483, -0.005494347}},
    {"4d", 0.075, {-0.012502916, -0.011929608, -0.010003237, -0.001492711, -0.001429639, -0.001204122}},
    {"4f", 0.025, {-0.029833656, -0.029273358, -0.027228277, -0.013929374, -0.013773389, -0.013182139}},
    {"4f", 0.050, {-0.020047209, -0.019644452, -0.018176769, -0.006097355, -0.006019483, -0.005724889}},
    {"4f", 0.075, {-0.012199670, -0.011929608, -0.010947973, -0.001455297, -0.001429639, -0.001333163}},
    {"5p", 0.025, {-0.014732070, -0.013773389, -0.011100961, -0.007127957, -0.006916484, -0.006175251}},
    {"5d", 0.025, {-0.014180352, -0.013773389, -0.012357598, -0.006506751, -0.006392207, -0.005967020}},
    {"5f", 0.025, {-0.014011823, -0.013773389, -0.012892982, -0.006465489, -0.006392207, -0.006113207}},
    {"5g", 0.025, {-0.013929374, -0.013773389, -0.013182139, -0.006440958, -0.006392207, -0.006204004}},
    {"6p", 0.025, {-0.006866319, -0.006392207, -0.005056211, -0.002734814, -0.002635101, -0.002286461}},
    {"6d", 0.025, {-0.005435481, -0.006392207, -0.005695750, -0.002691847, -0.002635101, -0.002424502}},
    {"6f", 0.025, {-0.006506751, -0.006392207, -0.005967020, -0.002670817, -0.002635101, -0.002499036}},
    {"6g", 0.025, {-0.006465489, -0.006392207, -0.006113207, -0.002658317, -0.002635101, -0.002545374}},
};

} // namespace

std::span<TableColumn const, 6> table_columns()
{
    return columns;
}

std::span<ReferenceRow const> reference_rows()
{
    return rows;
}

std::vector<TableCell> reproduce_table(double tolerance)
{
    std::vector<TableCell> cells;
    cells.reserve(std::size(rows) * columns.size());
    for (auto const& row : rows) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            auto const& col = columns[c];
            QuantumState const s = parse_spectroscopic(row.state, col.D);
            auto const p = PotentialParams::from_inverse_range(row.inv_b, 2.0, col.alpha);
            double const e = energy(p, s).energy;
            if (col.label == "0,1") {
                auto const p1 = PotentialParams::from_inverse_range(row.inv_b, 2.0, 1.0);
                double const e1 = energy(p1, s).energy;
                if (std::bit_cast<std::uint64_t>(e) != std::bit_cast<std::uint64_t>(e1)) {
                    std::ostringstream msg;
                    msg << "alpha = 0 and alpha = 1 disagree for " << row.state << " at 1/b = "
                        << row.inv_b << ", D = " << col.D;
                    throw std::logic_error(msg.str());
                }
            }
            double const diff = e - row.published[c];
            cells.push_back(TableCell{std::string(row.state), row.inv_b, std::string(col.label),
                                      col.D, row.published[c], e, diff,
                                      std::abs(diff) > tolerance});
        }
    }
    return cells;
}

} // namespace mrspec
