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

#ifndef CAUCHYRATIO_CSV_HPP_
#define CAUCHYRATIO_CSV_HPP_

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

#include "cauchyratio/core_types.hpp"

namespace cauchyratio {

// Locale-free decimal text with 17 significant digits; nan/inf spelled out.
std::string format_decimal(double value);

// Header row of column names, then one row per draw.
void write_batch_csv(const SampleBatch& batch, std::ostream& out);

struct GridSpec {
  double min = -3.0;
  double max = 3.0;
  std::size_t steps = 61;

  double at(std::size_t k) const;
};

// Parses "min:max:steps" (steps >= 2, max > min).
GridSpec parse_grid(std::string_view text);

// Rows z1,z2,series_value,closed_form_value over the steps x steps grid.
void write_copula_density_csv(double rho, const GridSpec& grid,
                              std::ostream& out, double series_tol = 1e-12);

}  // namespace cauchyratio

#endif  // CAUCHYRATIO_CSV_HPP_
