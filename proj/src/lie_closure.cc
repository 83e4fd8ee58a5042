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

#include "dqfim/lie_closure.h"

#include <deque>
#include <stdexcept>

namespace dqfim {

namespace {

constexpr double kPruneTol = 1e-14;

/// Orthogonalizes `v` against `basis` (two Gram-Schmidt passes) and returns
/// the residual norm.
double orthogonalize(PauliSum &v, const std::vector<PauliSum> &basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto &b : basis) {
            double c = b.dot(v);
            if (c != 0.0) {
                v.axpy(-c, b);
            }
        }
        v = v.traceless(kPruneTol);
    }
    return v.norm();
}

class SpanBuilder {
  public:
    SpanBuilder(int cap, double tol) : cap_(cap), tol_(tol) {}

    /// Returns false once the cap blocks an admission.
    bool offer(PauliSum candidate) {
        candidate = candidate.traceless(kPruneTol);
        double n0 = candidate.norm();
        if (n0 <= tol_) {
            return true;
        }
        candidate *= 1.0 / n0;
        double residual = orthogonalize(candidate, span_.basis);
        if (residual <= tol_) {
            return true;
        }
        if (span_.dim() >= cap_) {
            span_.truncated = true;
            return false;
        }
        candidate *= 1.0 / residual;
        span_.basis.push_back(std::move(candidate));
        frontier_.push_back(span_.basis.size() - 1);
        return true;
    }

    bool has_frontier() const { return !frontier_.empty(); }
    std::size_t pop() {
        std::size_t i = frontier_.front();
        frontier_.pop_front();
        return i;
    }
    const OperatorSpan &span() const { return span_; }
    OperatorSpan take() { return std::move(span_); }

  private:
    int cap_;
    double tol_;
    OperatorSpan span_;
    std::deque<std::size_t> frontier_;
};

} // namespace

OperatorSpan lie_closure(const std::vector<PauliSum> &generators, int cap, double tol, ClosureStrategy strategy) {
    if (generators.empty()) {
        throw std::invalid_argument("lie_closure needs at least one generator");
    }
    if (cap < 1) {
        throw std::invalid_argument("lie_closure cap must be >= 1");
    }
    const int n = generators[0].n_qubits();
    for (const auto &g : generators) {
        if (g.n_qubits() != n) {
            throw std::invalid_argument("lie_closure: generators act on different widths");
        }
    }
    SpanBuilder builder(cap, tol);
    for (const auto &g : generators) {
        if (!builder.offer(g)) {
            return builder.take();
        }
    }
    // Seed span equals the generator span; bracket against it in either strategy.
    const std::vector<PauliSum> seeds = builder.span().basis;
    while (builder.has_frontier()) {
        std::size_t idx = builder.pop();
        const PauliSum element = builder.span().basis[idx];
        if (strategy == ClosureStrategy::kGenerators) {
            for (const auto &g : seeds) {
                if (!builder.offer(pauli_commutator(g, element))) {
                    return builder.take();
                }
            }
        } else {
            // The basis may grow while we iterate; later entries are on the frontier anyway.
            std::size_t n_now = builder.span().basis.size();
            for (std::size_t j = 0; j < n_now; ++j) {
                PauliSum other = builder.span().basis[j];
                if (!builder.offer(pauli_commutator(other, element))) {
                    return builder.take();
                }
            }
        }
    }
    return builder.take();
}

bool check_rank_bound(int R, const OperatorSpan &span) {
    if (span.truncated) {
        throw std::logic_error("Lie closure was truncated; dim(g) is not certified");
    }
    return R <= span.dim();
}

} // namespace dqfim
