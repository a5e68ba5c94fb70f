// Copyright 2026 The cauchyratio Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cauchyratio/csv.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "cauchyratio/copula.hpp"

namespace cauchyratio {
namespace {

double parse_number(std::string_view text, const char* what) {
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kConfigError,
                std::string("cannot parse ") + what + " from '" +
                    std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string format_decimal(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                       std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

void write_batch_csv(const SampleBatch& batch, std::ostream& out) {
  for (std::size_t j = 0; j < batch.cols(); ++j) {
    if (j > 0) out << ',';
    out << batch.column_name(j);
  }
  out << '\n';
  std::string line;
  for (std::size_t i = 0; i < batch.rows(); ++i) {
    line.clear();
    for (std::size_t j = 0; j < batch.cols(); ++j) {
      if (j > 0) line.push_back(',');
      line += format_decimal(batch(i, j));
    }
    line.push_back('\n');
    out << line;
  }
}

double GridSpec::at(std::size_t k) const {
  if (k + 1 == steps) return max;
  return min + (max - min) * static_cast<double>(k) /
                   static_cast<double>(steps - 1);
}

GridSpec parse_grid(std::string_view text) {
  const auto first = text.find(':');
  const auto second =
      first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw Error(ErrorCode::kConfigError,
                "grid must look like min:max:steps, got '" + std::string(text) +
                    "'");
  }
  GridSpec grid;
  grid.min = parse_number(text.substr(0, first), "grid min");
  grid.max = parse_number(text.substr(first + 1, second - first - 1), "grid max");
  const double steps = parse_number(text.substr(second + 1), "grid steps");
  if (!(grid.max > grid.min) || !(steps >= 2.0) || steps != std::floor(steps)) {
    throw Error(ErrorCode::kConfigError,
                "grid needs max > min and an integer steps >= 2");
  }
  grid.steps = static_cast<std::size_t>(steps);
  return grid;
}

void write_copula_density_csv(double rho, const GridSpec& grid,
                              std::ostream& out, double series_tol) {
  CopulaParams params;
  params.rho = rho;
  params.series_tol = series_tol;
  params.validate();
  out << "z1,z2,series_value,closed_form_value\n";
  for (std::size_t a = 0; a < grid.steps; ++a) {
    const double z1 = grid.at(a);
    for (std::size_t b = 0; b < grid.steps; ++b) {
      const double z2 = grid.at(b);
      out << format_decimal(z1) << ',' << format_decimal(z2) << ','
          << format_decimal(series_pdf(params, z1, z2)) << ','
          << format_decimal(closed_form_pdf(rho, z1, z2)) << '\n';
    }
  }
}

}  // namespace cauchyratio
