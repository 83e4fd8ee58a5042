// Copyright 2026 The dqfim Authors
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

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace dqfim {

/// Real symmetric matrix with each off-diagonal pair stored once (packed upper
/// triangle), so entry(i, j) and entry(j, i) are the same double.
class SymmetricMatrix {
  public:
    explicit SymmetricMatrix(std::size_t dim = 0);
    /// Symmetrizes by reading the upper triangle of `m`; throws if not square.
    static SymmetricMatrix from_dense(const Eigen::MatrixXd &m);

    std::size_t dim() const { return dim_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
    double &operator()(std::size_t i, std::size_t j) { return data_[index(i, j)]; }

    Eigen::MatrixXd to_dense() const;
    /// Ascending eigenvalues.
    Eigen::VectorXd eigenvalues() const;
    bool all_finite() const;

  private:
    std::size_t index(std::size_t i, std::size_t j) const;

    std::size_t dim_;
    std::vector<double> data_;
};

struct RankTolerance {
    double rel = 1e-8;
    double abs = 1e-12;
};

/// Number of eigenvalues above max(rel * lambda_max, abs). Throws on non-finite input.
int psd_rank(const SymmetricMatrix &m, RankTolerance tol = {});
int psd_rank(const SymmetricMatrix &m, double rel_tol, double abs_tol);

/// Ratio of the smallest kept eigenvalue to the largest discarded one under `tol`.
/// Returns +inf when nothing is discarded or the discarded part is exactly zero.
double spectral_gap(const Eigen::VectorXd &ascending_eigenvalues, RankTolerance tol = {});

/// Rank count on precomputed ascending eigenvalues.
int count_above(const Eigen::VectorXd &ascending_eigenvalues, RankTolerance tol = {});

} // namespace dqfim
