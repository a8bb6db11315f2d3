#pragma once

/// @file io.hpp
/// Byte-deterministic emitters: CSV tables, the distance-frequency SVG plot
/// and JSON summaries. Numbers are written locale-independently with
/// 9 significant digits and `\n` line endings.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "jumpga/experiments.hpp"
#include "jumpga/ga.hpp"

namespace jumpga::io {

/// Shortest of fixed/scientific with 9 significant digits ("nan", "inf", "-inf" for non-finite).
std::string format_number(double value);

/// `iteration,d0,d2,...,d{2k}`; header only for an empty series.
std::string figure1_csv(const TelemetrySeries& series, std::size_t k);

/// `event,y,trials,p_plus,p_minus,stderr_plus,stderr_minus,bound,satisfied`.
std::string transitions_csv(std::span<const experiments::SweepCell> cells);

struct RunRow {
    std::size_t replicate = 0;
    std::uint64_t seed = 0;
    std::uint64_t iterations = 0;
    std::uint64_t evaluations = 0;
    std::string stop_reason;
};

/// `replicate,seed,iterations,evaluations,stop_reason`.
std::string runs_csv(std::span<const RunRow> rows);

/// Line plot of the figure1 columns against the iteration, one polyline per
/// distance class, y in [0, 1]. Self-contained; long series are thinned to
/// at most `max_points` evenly spaced snapshots (first and last kept).
std::string figure1_svg(const TelemetrySeries& series, std::size_t k, std::size_t max_points = 2000);

/// Writes `content` verbatim, creating parent directories. Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view content);

void write_series_csv(const TelemetrySeries& series, std::size_t k, const std::filesystem::path& path);
void render_svg(const TelemetrySeries& series, std::size_t k, const std::filesystem::path& path);

} // namespace jumpga::io
