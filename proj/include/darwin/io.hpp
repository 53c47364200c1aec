#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "darwin/analytic.hpp"
#include "darwin/experiments.hpp"

namespace darwin::io {

/// 17 significant digits, '.' separator, independent of the C locale.
/// Missing values print as "nan".
std::string format_number(double v);
std::string format_number(const std::optional<double>& v);

/// Columns r,f,I_bits,I_bar; `with_stats` appends I_bar_stddev,n_samples,n_excluded.
std::string fraction_curve_csv(const FractionCurve& curve, bool with_stats);

/// Columns n,I_SEk,S_S,coherence_S,coherence_Ek.
std::string series_csv(const std::vector<SeriesPoint>& series);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace darwin::io
