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

#ifndef NCSIM_TESTS_RANDOM_KRAUS_H
#define NCSIM_TESTS_RANDOM_KRAUS_H

#include <Eigen/Dense>
#include <random>
#include <vector>

namespace ncsim::test_support {

/// Random trace-preserving channel on n qubits with `rank` Kraus operators:
/// the blocks of a random isometry from a Gaussian matrix's QR factor.
inline std::vector<Eigen::MatrixXcd> random_kraus(size_t n, size_t rank, std::mt19937_64 &rng) {
    size_t d = size_t{1} << n;
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd g(d * rank, d);
    for (Eigen::Index r = 0; r < g.rows(); r++) {
        for (Eigen::Index c = 0; c < g.cols(); c++) {
            g(r, c) = {normal(rng), normal(rng)};
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd v = qr.householderQ() * Eigen::MatrixXcd::Identity(d * rank, d);
    std::vector<Eigen::MatrixXcd> kraus;
    for (size_t k = 0; k < rank; k++) {
        kraus.push_back(v.block(k * d, 0, d, d));
    }
    return kraus;
}

}  // namespace ncsim::test_support

#endif
