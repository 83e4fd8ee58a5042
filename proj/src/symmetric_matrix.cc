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

#include "dqfim/symmetric_matrix.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dqfim {

SymmetricMatrix::SymmetricMatrix(std::size_t dim) : dim_(dim), data_(dim * (dim + 1) / 2, 0.0) {}

SymmetricMatrix SymmetricMatrix::from_dense(const Eigen::MatrixXd &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("SymmetricMatrix::from_dense: matrix must be square");
    }
    SymmetricMatrix out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
        }
    }
    return out;
}

std::size_t SymmetricMatrix::index(std::size_t i, std::size_t j) const {
    if (i > j) {
        std::swap(i, j);
    }
    if (j >= dim_) {
        throw std::out_of_range("SymmetricMatrix index out of range");
    }
    // Row-major packed upper triangle.
    return i * dim_ - i * (i - 1) / 2 + (j - i);
}

Eigen::MatrixXd SymmetricMatrix::to_dense() const {
    auto n = static_cast<Eigen::Index>(dim_);
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            double v = (*this)(i, j);
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
    }
    return m;
}

bool SymmetricMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Eigen::VectorXd SymmetricMatrix::eigenvalues() const {
    if (!all_finite()) {
        throw std::invalid_argument("SymmetricMatrix has non-finite entries");
    }
    if (dim_ == 0) {
        return Eigen::VectorXd();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_dense(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symmetric eigensolver failed");
    }
    return solver.eigenvalues();
}

int count_above(const Eigen::VectorXd &ev, RankTolerance tol) {
    if (ev.size() == 0) {
        return 0;
    }
    double cut = std::max(tol.rel * ev.maxCoeff(), tol.abs);
    return static_cast<int>((ev.array() > cut).count());
}

int psd_rank(const SymmetricMatrix &m, RankTolerance tol) {
    if (!(tol.rel > 0) || !(tol.abs > 0)) {
        throw std::invalid_argument("psd_rank tolerances must be positive");
    }
    return count_above(m.eigenvalues(), tol);
}

int psd_rank(const SymmetricMatrix &m, double rel_tol, double abs_tol) { return psd_rank(m, RankTolerance{rel_tol, abs_tol}); }

double spectral_gap(const Eigen::VectorXd &ev, RankTolerance tol) {
    if (ev.size() == 0) {
        return std::numeric_limits<double>::infinity();
    }
    double cut = std::max(tol.rel * ev.maxCoeff(), tol.abs);
    double smallest_kept = std::numeric_limits<double>::infinity();
    double largest_dropped = 0.0;
    for (double v : ev) {
        if (v > cut) {
            smallest_kept = std::min(smallest_kept, v);
        } else {
            largest_dropped = std::max(largest_dropped, std::abs(v));
        }
    }
    if (largest_dropped == 0.0 || !std::isfinite(smallest_kept)) {
        return std::numeric_limits<double>::infinity();
    }
    return smallest_kept / largest_dropped;
}

} // namespace dqfim
