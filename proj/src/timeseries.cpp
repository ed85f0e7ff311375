#include "gica/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "gica/error.hpp"

namespace gica {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_double(std::string_view field) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::size_t resolve_column(const std::string& spec,
                           const std::vector<std::string_view>& header) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == spec) return i;
  }
  std::size_t index = 0;
  const auto [ptr, ec] =
      std::from_chars(spec.data(), spec.data() + spec.size(), index);
  if (ec != std::errc{} || ptr != spec.data() + spec.size()) {
    throw DataError("unknown column '" + spec + "'");
  }
  return index;
}

}  // namespace

void TimeSeriesPair::validate() const {
  if (x.size() != y.size()) {
    throw DataError("length mismatch between x (" + std::to_string(x.size()) +
                    ") and y (" + std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw DataError("at least 2 samples required");
  if (!(fs > 0.0) || !std::isfinite(fs)) {
    throw DataError("sampling frequency must be positive");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw DataError("non-finite sample at index " + std::to_string(i));
    }
  }
}

TimeSeriesPair load_pair(const std::filesystem::path& path, double fs,
                         const ColumnSpec& columns) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file '" + path.string() + "'");

  TimeSeriesPair pair;
  pair.fs = fs;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header_storage;
  std::vector<std::string_view> header;
  std::optional<std::size_t> cx;
  std::optional<std::size_t> cy;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);

    if (!cx) {
      const bool numeric = std::all_of(fields.begin(), fields.end(),
                                       [](auto f) { return parse_double(f).has_value(); });
      if (!numeric) {
        header_storage.assign(fields.begin(), fields.end());
        header.assign(header_storage.begin(), header_storage.end());
      }
      const std::size_t width = fields.size();
      if (width < 2) throw DataError("two columns required");
      cx = resolve_column(columns.x, header);
      cy = resolve_column(columns.y, header);
      if (*cx >= width || *cy >= width) {
        throw DataError("column index out of range (file has " +
                        std::to_string(width) + " columns)");
      }
      if (!numeric) continue;
    }

    const auto read = [&](std::size_t col) {
      if (col >= fields.size()) {
        throw DataError("missing column " + std::to_string(col) + " at row " +
                        std::to_string(line_no));
      }
      const auto value = parse_double(fields[col]);
      if (!value) {
        throw DataError("non-numeric cell '" + std::string(fields[col]) +
                        "' at row " + std::to_string(line_no) + ", column " +
                        std::to_string(col));
      }
      if (!std::isfinite(*value)) {
        throw DataError("non-finite value at row " + std::to_string(line_no) +
                        ", column " + std::to_string(col));
      }
      return *value;
    };
    pair.x.push_back(read(*cx));
    pair.y.push_back(read(*cy));
  }
  if (!cx) throw DataError("input file '" + path.string() + "' is empty");
  pair.validate();
  return pair;
}

void write_pair(const std::filesystem::path& path, const TimeSeriesPair& pair) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out.precision(15);
  out << "x,y\n";
  for (std::size_t i = 0; i < pair.size(); ++i) {
    out << pair.x[i] << ',' << pair.y[i] << '\n';
  }
}

namespace {

// A mean below the rounding level of the summation is treated as zero, which makes
// remove_mean exactly idempotent.
bool mean_is_rounding_noise(std::span<const double> v, double mean) {
  double abs_sum = 0.0;
  for (double x : v) abs_sum += std::abs(x);
  const double bound = 4.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  return std::abs(mean) <= bound;
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> remove_mean(std::span<const double> series) {
  if (series.empty()) throw InvalidArgument("remove_mean: empty series");
  std::vector<double> out(series.begin(), series.end());
  const double mean = mean_of(out);
  if (mean_is_rounding_noise(out, mean)) return out;
  for (auto& v : out) v -= mean;
  const double residual = mean_of(out);
  if (!mean_is_rounding_noise(out, residual)) {
    for (auto& v : out) v -= residual;
  }
  return out;
}

std::vector<double> highpass_detrend(std::span<const double> series, double fs,
                                     double cutoff_hz) {
  if (!(fs > 0.0)) throw InvalidArgument("highpass_detrend: fs must be positive");
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < fs / 2.0)) {
    throw InvalidArgument("highpass_detrend: cutoff must lie in (0, fs/2)");
  }
  const std::size_t n = series.size();
  if (n < 20) throw InvalidArgument("highpass_detrend: series too short (N < 20)");

  // H(z) = g (1 - z^-1) / (1 - a z^-1), bilinear with prewarped cutoff, unit gain at Nyquist.
  const double w = std::tan(std::numbers::pi * cutoff_hz / fs);
  const double a = (1.0 - w) / (1.0 + w);
  const double g = (1.0 + a) / 2.0;
  const double tau = 1.0 / (1.0 - a);
  const std::size_t pad =
      std::min<std::size_t>(n - 1, static_cast<std::size_t>(std::ceil(6.0 * tau)));

  std::vector<double> buf;
  buf.reserve(n + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) buf.push_back(series[i]);
  buf.insert(buf.end(), series.begin(), series.end());
  for (std::size_t i = 1; i <= pad; ++i) buf.push_back(series[n - 1 - i]);

  const auto run = [a, g](std::vector<double>& v) {
    double prev_in = v.front();
    double prev_out = 0.0;
    for (auto& s : v) {
      const double in = s;
      prev_out = a * prev_out + g * (in - prev_in);
      prev_in = in;
      s = prev_out;
    }
  };
  run(buf);
  std::reverse(buf.begin(), buf.end());
  run(buf);
  std::reverse(buf.begin(), buf.end());

  return {buf.begin() + static_cast<std::ptrdiff_t>(pad),
          buf.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

TimeSeriesPair precondition(const TimeSeriesPair& pair,
                            std::optional<double> detrend_cutoff_hz) {
  pair.validate();
  TimeSeriesPair out;
  out.fs = pair.fs;
  if (detrend_cutoff_hz) {
    out.x = remove_mean(highpass_detrend(pair.x, pair.fs, *detrend_cutoff_hz));
    out.y = remove_mean(highpass_detrend(pair.y, pair.fs, *detrend_cutoff_hz));
  } else {
    out.x = remove_mean(pair.x);
    out.y = remove_mean(pair.y);
  }
  return out;
}

}  // namespace gica
