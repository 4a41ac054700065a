#pragma once

// The reference scheduling results table and its internal consistency checks.

#include "distillery/cost_model.hpp"
#include "distillery/reliability.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace distillery {

struct Table1Cell {
    std::optional<std::int64_t> T;  // empty where the table prints nothing
    std::int64_t S = 0;
    std::int64_t BB = 0;
};

enum class Variant : std::uint8_t { Optimised, Unoptimised };
enum class Algo : std::uint8_t { Asap, Alapt, Alaps };

struct Table1Row {
    std::string circuit;
    std::int64_t A = 0;
    std::int64_t Y = 0;
    /// [variant][algo]
    std::array<std::array<Table1Cell, 3>, 2> cells{};

    [[nodiscard]] const Table1Cell& cell(Variant v, Algo a) const {
        return cells[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)];
    }
};

std::string_view to_string(Variant v);
std::string_view to_string(Algo a);

/// CSV with header `circuit,A,Y,opt_asap_T,opt_asap_S,opt_asap_BB,...,unopt_alaps_BB`.
std::vector<Table1Row> parse_table1(std::string_view csv);
std::vector<Table1Row> load_table1(const std::string& path);

enum class Table1Check : std::uint8_t { BoxProduct, AsapSpace, OnlineSpaceGap, YTwiceA };
std::string_view to_string(Table1Check c);

struct Table1CheckResult {
    std::string circuit;
    Table1Check check;
    bool pass = false;
    std::string detail;
};

struct Table1Report {
    std::vector<Table1CheckResult> results;  // four per row, in row order

    [[nodiscard]] std::size_t rows() const { return results.size() / 4; }
    [[nodiscard]] std::size_t rows_passing() const;
    [[nodiscard]] bool all_pass() const;
};

/// Per row: BB = T*S in all six cells (a blank T passes when S divides BB and
/// the derived T is reported), ASAP S = wA*(A+s_A) + wY*(Y+s_Y) in both
/// variants, S_ALAPT - S_ALAPS = s_online*wA in both variants, and Y = 2A.
Table1Report check_table1(const std::vector<Table1Row>& rows, const ReliabilityParams& rel = {},
                          const CostModel& cm = CostModel::defaults());

}  // namespace distillery
