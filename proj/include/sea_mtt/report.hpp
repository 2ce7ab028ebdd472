#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sea_mtt/mtt.hpp"
#include "sea_mtt/sim.hpp"

namespace sea {

// 9 significant digits, shortest of fixed/scientific, locale independent.
std::string format_number(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    // Throws std::invalid_argument if the row width differs from the header.
    void add_row(std::vector<std::string> row);

    const std::vector<std::string>& header() const noexcept { return header_; }
    std::size_t rows() const noexcept { return rows_.size(); }
    // Comma-delimited, LF line endings, trailing newline.
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

CsvTable curve_table(const MttCurve& curve);
// dc_limited / dc_limited_v flag a Zero torque / velocity bandwidth; unbounded
// flags an Unbounded omega_mt (no crossing in either channel).
CsvTable sweep_table(const std::vector<SweepEntry>& entries, const FrequencyGrid& search);
CsvTable trace_table(const SimTrace& trace);

// Log-log plot of MTT_tau and MTT_V with the unity threshold line.
std::string render_svg(const MttCurve& curve, const std::string& title);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace sea
