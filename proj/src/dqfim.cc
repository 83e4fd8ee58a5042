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

#include "dqfim/dqfim.h"

#include <cmath>
#include <stdexcept>

namespace dqfim {

StateVector DataProjector::state(int k) const {
    return StateVector::normalized(n_qubits, basis.col(k));
}

DataProjector build_projector(std::span<const StateVector> states, double tol) {
    if (states.empty()) {
        throw std::invalid_argument("build_projector needs at least one state");
    }
    const int n = states[0].n_qubits();
    const auto L = static_cast<Eigen::Index>(states.size());
    const auto dim = static_cast<Eigen::Index>(states[0].dim());
    Eigen::MatrixXcd psi(dim, L);
    for (Eigen::Index l = 0; l < L; ++l) {
        if (states[static_cast<std::size_t>(l)].n_qubits() != n) {
            throw std::invalid_argument("build_projector: states have different widths");
        }
        psi.col(l) = states[static_cast<std::size_t>(l)].amplitudes();
    }
    Eigen::MatrixXcd gram = psi.adjoint() * psi;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("build_projector: Gram eigensolver failed");
    }
    const Eigen::VectorXd &w = solver.eigenvalues();
    const double cut = tol * w.maxCoeff();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = L - 1; k >= 0; --k) {
        if (w[k] > cut) {
            keep.push_back(k);
        }
    }
    DataProjector proj;
    proj.n_qubits = n;
    proj.basis.resize(dim, static_cast<Eigen::Index>(keep.size()));
    proj.weights.resize(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
        Eigen::Index k = keep[c];
        auto col = static_cast<Eigen::Index>(c);
        proj.basis.col(col) = psi * solver.eigenvectors().col(k) / std::sqrt(w[k]);
        proj.weights[col] = w[k] / static_cast<double>(L);
    }
    // Near-degenerate Gram spectra leave O(eps / w) overlap; two Gram-Schmidt passes remove it.
    for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index c = 0; c < proj.basis.cols(); ++c) {
            for (Eigen::Index j = 0; j < c; ++j) {
                proj.basis.col(c) -= proj.basis.col(j).dot(proj.basis.col(c)) * proj.basis.col(j);
            }
            proj.basis.col(c).normalize();
        }
    }
    return proj;
}

DataProjector full_projector(int n_qubits) {
    auto dim = Eigen::Index{1} << n_qubits;
    DataProjector proj;
    proj.n_qubits = n_qubits;
    proj.basis = Eigen::MatrixXcd::Identity(dim, dim);
    proj.weights = Eigen::VectorXd::Constant(dim, 1.0 / static_cast<double>(dim));
    return proj;
}

DQFIMMatrix assemble_dqfim(std::span<const JacobianBundle> jacobians) {
    if (jacobians.empty()) {
        throw std::invalid_argument("assemble_dqfim needs at least one basis state");
    }
    const auto m = jacobians[0].derivatives.cols();
    const double inv_b = 1.0 / static_cast<double>(jacobians.size());
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m, m);
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(m);
    for (const auto &jb : jacobians) {
        if (jb.derivatives.cols() != m) {
            throw std::invalid_argument("assemble_dqfim: inconsistent parameter counts");
        }
        s.selfadjointView<Eigen::Lower>().rankUpdate(jb.derivatives.adjoint());
        // <psi | d_m psi> for every m.
        a.noalias() += jb.derivatives.transpose() * jb.output.amplitudes().conjugate();
    }
    a *= inv_b;
    DQFIMMatrix out{SymmetricMatrix(static_cast<std::size_t>(m)), static_cast<int>(jacobians.size())};
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            double v = 4.0 * (inv_b * s(i, j) - std::conj(a[i]) * a[j]).real();
            out.matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
        }
    }
    return out;
}

DQFIMMatrix compute_dqfim(const Ansatz &ansatz, const ParameterVector &theta, const DataProjector &proj) {
    if (proj.n_qubits != ansatz.n_qubits()) {
        throw std::invalid_argument("compute_dqfim: projector width does not match ansatz");
    }
    std::vector<JacobianBundle> jacobians;
    jacobians.reserve(static_cast<std::size_t>(proj.rank()));
    for (int k = 0; k < proj.rank(); ++k) {
        jacobians.push_back(circuit_jacobian(ansatz, theta, proj.state(k)));
    }
    return assemble_dqfim(jacobians);
}

RankResult effective_dimension(const Ansatz &ansatz, const ParameterVector &theta, const DataProjector &proj,
                               RankTolerance tol) {
    Eigen::VectorXd ev = compute_dqfim(ansatz, theta, proj).matrix.eigenvalues();
    return RankResult{count_above(ev, tol), spectral_gap(ev, tol)};
}

std::int64_t unitary_bound(std::int64_t d, std::int64_t L) {
    if (d < 2 || L < 1) {
        throw std::invalid_argument("unitary_bound needs d >= 2 and L >= 1");
    }
    if (L >= d) {
        return d * d - 1;
    }
    return 2 * d * L - L * L - 1;
}

} // namespace dqfim
