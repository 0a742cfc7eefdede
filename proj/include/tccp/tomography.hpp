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

#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>

namespace tccp {

using Mat4c = Eigen::Matrix4cd;
using ChiMatrix = Eigen::Matrix<std::complex<double>, 16, 16>;

// Two-qubit Paulis in the order II, IX, IY, IZ, XI, ..., ZZ; the left factor
// acts on Q1, and the computational basis is |00>, |01>, |10>, |11>.
const std::array<Mat4c, 16>& pauli_basis();
std::string pauli_label(int alpha);

// c_alpha = Tr(P_alpha M) / 4 and chi = c c^dag, for any 4x4 block M.
// A non-unitary M (leakage) yields trace < 1.
ChiMatrix chi_from_operator(const Mat4c& m);

// Same construction; rejects inputs that are not unitary to 1e-9.
ChiMatrix qpt_chi(const Mat4c& u);

// Tr(chi_ideal chi).
double process_fidelity(const ChiMatrix& chi, const ChiMatrix& chi_ideal);

// sum_ab chi_ab P_a rho P_b.
Mat4c apply_chi(const ChiMatrix& chi, const Mat4c& rho);

Mat4c ideal_cz();

}  // namespace tccp
