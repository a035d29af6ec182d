// Copyright 2026 The pqwalk Authors
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

#ifndef PQW_REFSIM_HPP
#define PQW_REFSIM_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace pqw {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Thrown when a request exceeds a configured desk-scale cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown for malformed inputs (bad parameters, non-Hermitian data, ...).
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

constexpr int kMaxExpmDim = 1024;

bool is_hermitian(const Mat& h, double tol = 1e-12);

// e^{-iht} through a full eigendecomposition. Eigenvalues are ordered
// ascending by value, ties broken by index.
Mat expm_hermitian(const Mat& h, double t);

// Largest singular value of a - b.
double spectral_distance(const Mat& a, const Mat& b);
double spectral_norm(const Mat& a);

double max_abs_entry(const Mat& a);

// Principal square root with phase taken on (-pi, pi]. The single branch
// rule shared by the re-weight angles and coefficient state preparation.
cplx principal_sqrt(cplx z);

// [[re, im], ...] rows.
nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j);

}  // namespace pqw

#endif  // PQW_REFSIM_HPP
