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

#include "dqfim/pauli.h"
#include "dqfim/state_vector.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dqfim {

namespace {

using cplx = std::complex<double>;

void check_width(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 64) {
        throw std::invalid_argument("PauliSum supports 1..64 qubits");
    }
}

// Product of two words: P Q = i^phase R. Per qubit, XY = iZ, YZ = iX, ZX = iY and
// the reversed orders pick up -i.
int product_phase(const PauliWord &p, const PauliWord &q) {
    int phase = 0;
    std::uint64_t active = (p.x | p.z) & (q.x | q.z);
    while (active) {
        int k = std::countr_zero(active);
        active &= active - 1;
        int a = static_cast<int>(p.at(k));
        int b = static_cast<int>(q.at(k));
        if (a == b) {
            continue;
        }
        // cyclic X->Y->Z->X gives +i
        phase += ((b - a + 3) % 3 == 1) ? 1 : 3;
    }
    return phase & 3;
}

cplx i_power(int k) {
    static constexpr double re[4] = {1, 0, -1, 0};
    static constexpr double im[4] = {0, 1, 0, -1};
    return {re[k & 3], im[k & 3]};
}

} // namespace

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

PauliWord PauliWord::single(int qubit, Pauli p) {
    PauliWord w;
    std::uint64_t bit = std::uint64_t{1} << qubit;
    if (p == Pauli::X || p == Pauli::Y) {
        w.x = bit;
    }
    if (p == Pauli::Z || p == Pauli::Y) {
        w.z = bit;
    }
    return w;
}

Pauli PauliWord::at(int qubit) const {
    bool xb = (x >> qubit) & 1;
    bool zb = (z >> qubit) & 1;
    if (xb && zb) {
        return Pauli::Y;
    }
    if (xb) {
        return Pauli::X;
    }
    return zb ? Pauli::Z : Pauli::I;
}

bool PauliWord::commutes_with(const PauliWord &other) const {
    return (std::popcount((x & other.z) ^ (z & other.x)) & 1) == 0;
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) { check_width(n_qubits); }

PauliSum::PauliSum(int n_qubits, std::vector<PauliTerm> terms) : n_qubits_(n_qubits), terms_(std::move(terms)) {
    check_width(n_qubits);
    std::uint64_t mask = n_qubits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits) - 1;
    for (const auto &t : terms_) {
        if (((t.word.x | t.word.z) & ~mask) != 0) {
            throw std::invalid_argument("Pauli word acts outside the register");
        }
        if (!std::isfinite(t.coefficient)) {
            throw std::invalid_argument("Pauli coefficient must be finite");
        }
    }
    canonicalize(0.0);
}

PauliSum PauliSum::single(int n_qubits, PauliWord word, double coefficient) {
    return PauliSum(n_qubits, {PauliTerm{word, coefficient}});
}

PauliSum PauliSum::parse(int n_qubits, std::string_view text) {
    std::vector<PauliTerm> terms;
    std::string s(text);
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(" + ", pos);
        std::string part = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? s.size() : next + 3;
        double coef = 1.0;
        std::string word = part;
        if (auto star = part.find('*'); star != std::string::npos) {
            coef = std::stod(part.substr(0, star));
            word = part.substr(star + 1);
        }
        if (static_cast<int>(word.size()) != n_qubits) {
            throw std::invalid_argument("Pauli word '" + word + "' has wrong length");
        }
        PauliWord w;
        for (int k = 0; k < n_qubits; ++k) {
            switch (word[static_cast<std::size_t>(k)]) {
            case 'I':
            case '_': break;
            case 'X': w.x |= std::uint64_t{1} << k; break;
            case 'Y':
                w.x |= std::uint64_t{1} << k;
                w.z |= std::uint64_t{1} << k;
                break;
            case 'Z': w.z |= std::uint64_t{1} << k; break;
            default: throw std::invalid_argument("bad Pauli letter in '" + word + "'");
            }
        }
        terms.push_back({w, coef});
    }
    return PauliSum(n_qubits, std::move(terms));
}

void PauliSum::canonicalize(double threshold) {
    std::sort(terms_.begin(), terms_.end(), [](const PauliTerm &a, const PauliTerm &b) { return a.word < b.word; });
    std::vector<PauliTerm> merged;
    merged.reserve(terms_.size());
    for (const auto &t : terms_) {
        if (!merged.empty() && merged.back().word == t.word) {
            merged.back().coefficient += t.coefficient;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [threshold](const PauliTerm &t) { return std::abs(t.coefficient) <= threshold; });
    terms_ = std::move(merged);
}

double PauliSum::coefficient(PauliWord w) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                               [](const PauliTerm &t, const PauliWord &key) { return t.word < key; });
    return (it != terms_.end() && it->word == w) ? it->coefficient : 0.0;
}

double PauliSum::dot(const PauliSum &other) const {
    double acc = 0.0;
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() && b != other.terms_.end()) {
        if (a->word < b->word) {
            ++a;
        } else if (b->word < a->word) {
            ++b;
        } else {
            acc += a->coefficient * b->coefficient;
            ++a;
            ++b;
        }
    }
    return acc;
}

double PauliSum::norm() const { return std::sqrt(dot(*this)); }

PauliSum &PauliSum::operator+=(const PauliSum &other) {
    axpy(1.0, other);
    return *this;
}

PauliSum &PauliSum::operator*=(double s) {
    for (auto &t : terms_) {
        t.coefficient *= s;
    }
    canonicalize(0.0);
    return *this;
}

void PauliSum::axpy(double s, const PauliSum &other) {
    if (other.n_qubits_ != n_qubits_) {
        throw std::invalid_argument("PauliSum width mismatch");
    }
    std::vector<PauliTerm> out;
    out.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() || b != other.terms_.end()) {
        if (b == other.terms_.end() || (a != terms_.end() && a->word < b->word)) {
            out.push_back(*a++);
        } else if (a == terms_.end() || b->word < a->word) {
            out.push_back({b->word, s * b->coefficient});
            ++b;
        } else {
            double c = a->coefficient + s * b->coefficient;
            if (c != 0.0) {
                out.push_back({a->word, c});
            }
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
}

PauliSum PauliSum::traceless(double threshold) const {
    PauliSum out(n_qubits_);
    out.terms_.reserve(terms_.size());
    for (const auto &t : terms_) {
        if (!t.word.is_identity() && std::abs(t.coefficient) > threshold) {
            out.terms_.push_back(t);
        }
    }
    return out;
}

Eigen::MatrixXcd PauliSum::to_dense() const {
    if (n_qubits_ > 12) {
        throw std::invalid_argument("to_dense is limited to 12 qubits");
    }
    auto dim = Eigen::Index{1} << n_qubits_;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : terms_) {
        // P|j> = phase(j) |j xor x>, with Y|0> = i|1>, Y|1> = -i|0>.
        int n_y = std::popcount(t.word.x & t.word.z);
        cplx base = i_power(n_y);
        for (Eigen::Index j = 0; j < dim; ++j) {
            auto uj = static_cast<std::uint64_t>(j);
            int sign_bits = std::popcount(uj & t.word.z);
            cplx amp = base * ((sign_bits & 1) ? -1.0 : 1.0);
            m(static_cast<Eigen::Index>(uj ^ t.word.x), j) += t.coefficient * amp;
        }
    }
    return m;
}

std::string PauliSum::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    out.precision(17);
    bool first = true;
    for (const auto &t : terms_) {
        if (!first) {
            out << " + ";
        }
        first = false;
        out << t.coefficient << '*';
        for (int k = 0; k < n_qubits_; ++k) {
            out << pauli_char(t.word.at(k));
        }
    }
    return out.str();
}

PauliSum pauli_commutator(const PauliSum &a, const PauliSum &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("pauli_commutator: width mismatch");
    }
    // [P, Q] = 2 P Q = 2 i^k R for anticommuting words (k odd), so C = 2 i^(k-1) R.
    std::vector<PauliTerm> out;
    out.reserve(a.terms().size() * b.terms().size());
    for (const auto &ta : a.terms()) {
        for (const auto &tb : b.terms()) {
            if (ta.word.commutes_with(tb.word)) {
                continue;
            }
            int k = product_phase(ta.word, tb.word);
            double sign = (k == 1) ? 2.0 : -2.0;
            out.push_back({PauliWord{ta.word.x ^ tb.word.x, ta.word.z ^ tb.word.z}, sign * ta.coefficient * tb.coefficient});
        }
    }
    return PauliSum(a.n_qubits(), std::move(out));
}

PauliSum pauli_decompose(const Eigen::MatrixXcd &hermitian, double threshold) {
    if (hermitian.rows() != hermitian.cols()) {
        throw std::invalid_argument("pauli_decompose: matrix must be square");
    }
    int n = qubits_for_dim(static_cast<std::size_t>(hermitian.rows()));
    auto dim = hermitian.rows();
    std::vector<PauliTerm> terms;
    std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < limit; ++x) {
        for (std::uint64_t z = 0; z < limit; ++z) {
            PauliWord w{x, z};
            // tr(P H) = sum_j P_{j, j^x} H_{j^x, j}.
            cplx acc = 0.0;
            int n_y = std::popcount(x & z);
            cplx base = i_power(n_y);
            for (Eigen::Index j = 0; j < dim; ++j) {
                auto col = static_cast<std::uint64_t>(j) ^ x;
                int sign_bits = std::popcount(col & z);
                cplx p_entry = base * ((sign_bits & 1) ? -1.0 : 1.0); // P_{j, col}
                acc += p_entry * hermitian(static_cast<Eigen::Index>(col), j);
            }
            double c = acc.real() / static_cast<double>(dim);
            if (std::abs(c) > threshold) {
                terms.push_back({w, c});
            }
        }
    }
    return PauliSum(n, std::move(terms));
}

} // namespace dqfim
