// Copyright 2026 The ncsim Authors
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

#ifndef NCSIM_IO_H
#define NCSIM_IO_H

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "ncsim/channels.h"

namespace ncsim {

/// Shortest-safe round-trip text for a double: "%.17g".
std::string format_double(double value);

/// {"n": .., "one_norm": .., "negativity": .., "terms": [...]}, one term per line.
std::string decomposition_to_json(const StabilizerDecomposition &d);
/// Inverse of decomposition_to_json. Extra keys are ignored. Throws
/// std::invalid_argument on malformed input.
StabilizerDecomposition decomposition_from_json(std::string_view text);

/// Kraus file: a JSON list of matrices, each {"re": [[..]], "im": [[..]]}
/// ("im" optional).
std::vector<Eigen::MatrixXcd> kraus_from_json(std::string_view text);
std::string kraus_to_json(const std::vector<Eigen::MatrixXcd> &kraus);

/// Whole file contents; throws std::runtime_error when it cannot be read.
std::string read_file(const std::string &path);

}  // namespace ncsim

#endif
