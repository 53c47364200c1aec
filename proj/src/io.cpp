#include "darwin/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace darwin::io {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string format_number(const std::optional<double>& v) { return v ? format_number(*v) : "nan"; }

std::string fraction_curve_csv(const FractionCurve& curve, bool with_stats) {
  std::string out = with_stats ? "r,f,I_bits,I_bar,I_bar_stddev,n_samples,n_excluded\n" : "r,f,I_bits,I_bar\n";
  for (const auto& p : curve.points) {
    out += std::to_string(p.r) + ',' + format_number(p.f) + ',' + format_number(p.mi_mean) + ',' +
           format_number(p.mi_bar_mean);
    if (with_stats) {
      out += ',' + format_number(p.mi_bar_stddev) + ',' + std::to_string(p.n_samples) + ',' +
             std::to_string(p.n_excluded);
    }
    out += '\n';
  }
  return out;
}

std::string series_csv(const std::vector<SeriesPoint>& series) {
  std::string out = "n,I_SEk,S_S,coherence_S,coherence_Ek\n";
  for (const auto& p : series) {
    out += std::to_string(p.n) + ',' + format_number(p.single_ancilla_mi) + ',' +
           format_number(p.system_entropy) + ',' + format_number(p.system_coherence) + ',' +
           format_number(p.ancilla_coherence) + '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace darwin::io
