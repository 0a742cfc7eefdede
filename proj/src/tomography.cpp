// Copyright 2026 The tccp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tccp/tomography.hpp"

#include "tccp/errors.hpp"

namespace tccp {

namespace {

using cd = std::complex<double>;

std::array<Eigen::Matrix2cd, 4> single_paulis() {
  const cd i(0.0, 1.0);
  Eigen::Matrix2cd id, x, y, z;
  id << 1, 0, 0, 1;
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  return {id, x, y, z};
}

Mat4c kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Mat4c out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

}  // namespace

const std::array<Mat4c, 16>& pauli_basis() {
  static const std::array<Mat4c, 16> basis = [] {
    auto p = single_paulis();
    std::array<Mat4c, 16> out;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) out[4 * a + b] = kron(p[a], p[b]);
    }
    return out;
  }();
  return basis;
}

std::string pauli_label(int alpha) {
  static const char names[] = {'I', 'X', 'Y', 'Z'};
  return {names[alpha / 4], names[alpha % 4]};
}

ChiMatrix chi_from_operator(const Mat4c& m) {
  const auto& p = pauli_basis();
  Eigen::Matrix<cd, 16, 1> c;
  for (int a = 0; a < 16; ++a) c(a) = (p[a] * m).trace() / 4.0;
  return c * c.adjoint();
}

ChiMatrix qpt_chi(const Mat4c& u) {
  double dev = (u.adjoint() * u - Mat4c::Identity()).cwiseAbs().maxCoeff();
  if (dev > 1e-9) throw NumericError("process tomography input is not unitary");
  return chi_from_operator(u);
}

double process_fidelity(const ChiMatrix& chi, const ChiMatrix& chi_ideal) {
  return (chi_ideal * chi).trace().real();
}

Mat4c apply_chi(const ChiMatrix& chi, const Mat4c& rho) {
  const auto& p = pauli_basis();
  Mat4c out = Mat4c::Zero();
  for (int a = 0; a < 16; ++a) {
    Mat4c left = p[a] * rho;
    for (int b = 0; b < 16; ++b) {
      if (chi(a, b) == cd(0.0)) continue;
      out += chi(a, b) * left * p[b];
    }
  }
  return out;
}

Mat4c ideal_cz() {
  Mat4c u = Mat4c::Identity();
  u(3, 3) = -1.0;
  return u;
}

}  // namespace tccp
