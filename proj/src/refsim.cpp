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

#include "pqw/refsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace pqw {

bool is_hermitian(const Mat& h, double tol) {
  if (h.rows() != h.cols()) return false;
  return max_abs_entry(h - h.adjoint()) <= tol;
}

Mat expm_hermitian(const Mat& h, double t) {
  if (h.rows() != h.cols() || !is_hermitian(h, 1e-10)) {
    throw InvalidInput("expm_hermitian: input is not Hermitian");
  }
  if (h.rows() > kMaxExpmDim) throw CapExceeded("expm_hermitian: dimension above 1024");
  const Eigen::Index n = h.rows();
  if (n == 0) return h;
  Mat sym = (h + h.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  Eigen::VectorXd lam = es.eigenvalues();
  Mat u = es.eigenvectors();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return lam(a) < lam(b); });
  Mat us(n, n);
  Vec ph(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    us.col(i) = u.col(order[i]);
    ph(i) = std::exp(cplx(0.0, -lam(order[i]) * t));
  }
  return us * ph.asDiagonal() * us.adjoint();
}

double spectral_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

double spectral_distance(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInput("spectral_distance: shape mismatch");
  }
  return spectral_norm(a - b);
}

double max_abs_entry(const Mat& a) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

cplx principal_sqrt(cplx z) {
  double r = std::abs(z);
  if (r == 0.0) return 0.0;
  double th = std::atan2(z.imag(), z.real());
  if (th <= -M_PI) th = M_PI;
  return std::polar(std::sqrt(r), th / 2.0);
}

nlohmann::json matrix_to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Mat matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("matrix json: expected array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols) throw InvalidInput("matrix json: ragged rows");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = cplx(j[i][k][0].get<double>(), j[i][k][1].get<double>());
  }
  return m;
}

}  // namespace pqw
