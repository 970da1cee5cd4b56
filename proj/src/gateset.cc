// Copyright 2026 The qecopt Authors
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

#include "qecopt/gateset.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "qecopt/error.h"

namespace qecopt {

std::string_view kind_name(PulseKind kind) {
    switch (kind) {
        case PulseKind::GlobalX:
            return "X";
        case PulseKind::GlobalY:
            return "Y";
        case PulseKind::MSXX:
            return "X2";
        case PulseKind::MSYY:
            return "Y2";
        case PulseKind::LocalZ:
            return "z";
        case PulseKind::SubsetMSYY:
            return "MSY2";
        case PulseKind::Measure:
            return "M";
        case PulseKind::Reset:
            return "R";
    }
    return "?";
}

Pulse Pulse::x(double theta) {
    return Pulse{PulseKind::GlobalX, 0, {}, theta};
}
Pulse Pulse::y(double theta) {
    return Pulse{PulseKind::GlobalY, 0, {}, theta};
}
Pulse Pulse::xx(double theta) {
    return Pulse{PulseKind::MSXX, 0, {}, theta};
}
Pulse Pulse::yy(double theta) {
    return Pulse{PulseKind::MSYY, 0, {}, theta};
}
Pulse Pulse::z(int qubit, double theta) {
    return Pulse{PulseKind::LocalZ, qubit, {}, theta};
}
Pulse Pulse::subset_yy(std::vector<int> qubits, double theta) {
    return Pulse{PulseKind::SubsetMSYY, 0, std::move(qubits), theta};
}
Pulse Pulse::measure(int qubit) {
    return Pulse{PulseKind::Measure, qubit, {}, 0.0};
}
Pulse Pulse::reset(int qubit) {
    return Pulse{PulseKind::Reset, qubit, {}, 0.0};
}

bool Pulse::is_unitary() const {
    return kind != PulseKind::Measure && kind != PulseKind::Reset;
}

bool Pulse::is_entangling() const {
    return kind == PulseKind::MSXX || kind == PulseKind::MSYY || kind == PulseKind::SubsetMSYY;
}

std::size_t PulseSequence::unitary_count() const {
    return std::count_if(pulses.begin(), pulses.end(), [](const Pulse &p) { return p.is_unitary(); });
}

std::size_t PulseSequence::entangling_count() const {
    return std::count_if(pulses.begin(), pulses.end(), [](const Pulse &p) { return p.is_entangling(); });
}

double PulseSequence::entangling_angle_sum() const {
    double s = 0;
    for (const auto &p : pulses) {
        if (p.is_entangling()) {
            s += std::abs(p.theta);
        }
    }
    return s;
}

std::size_t PulseSequence::measure_count() const {
    return std::count_if(pulses.begin(), pulses.end(), [](const Pulse &p) { return p.kind == PulseKind::Measure; });
}

std::size_t PulseSequence::reset_count() const {
    return std::count_if(pulses.begin(), pulses.end(), [](const Pulse &p) { return p.kind == PulseKind::Reset; });
}

bool PulseSequence::has_measurement_or_reset() const {
    return unitary_count() != pulses.size();
}

void validate_pulse(const Pulse &p, int n_qubits) {
    auto check = [&](int q) {
        if (q < 1 || q > n_qubits) {
            throw Error(
                ErrorKind::IndexOutOfRange,
                std::string(kind_name(p.kind)) + " on qubit " + std::to_string(q) + " of " + std::to_string(n_qubits));
        }
    };
    switch (p.kind) {
        case PulseKind::LocalZ:
        case PulseKind::Measure:
        case PulseKind::Reset:
            check(p.qubit);
            break;
        case PulseKind::SubsetMSYY:
            if (p.subset.empty()) {
                throw Error(ErrorKind::IndexOutOfRange, "empty MS subset");
            }
            for (std::size_t k = 0; k < p.subset.size(); k++) {
                check(p.subset[k]);
                if (k > 0 && p.subset[k] <= p.subset[k - 1]) {
                    throw Error(ErrorKind::IndexOutOfRange, "MS subset must be strictly increasing");
                }
            }
            break;
        default:
            break;
    }
    if (!std::isfinite(p.theta)) {
        throw Error(ErrorKind::ConfigInvalid, "non-finite pulse angle");
    }
}

void PulseSequence::validate() const {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw Error(ErrorKind::IndexOutOfRange, "qubit count " + std::to_string(n_qubits));
    }
    for (const auto &p : pulses) {
        validate_pulse(p, n_qubits);
    }
}

Generator resolve(const Pulse &p, int n_qubits) {
    if (!p.is_unitary()) {
        throw Error(ErrorKind::NotUnitaryKind, std::string(kind_name(p.kind)) + " has no Hamiltonian");
    }
    validate_pulse(p, n_qubits);
    Generator g{p.kind, {}};
    switch (p.kind) {
        case PulseKind::LocalZ:
            g.qubits = {p.qubit};
            break;
        case PulseKind::SubsetMSYY:
            g.qubits = p.subset;
            break;
        default:
            for (int q = 1; q <= n_qubits; q++) {
                g.qubits.push_back(q);
            }
    }
    return g;
}

namespace {

Operator spin_sum(char axis, const std::vector<int> &qubits, int n) {
    Operator s = Operator::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (int q : qubits) {
        s += 0.5 * embed(pauli_matrix(axis), q, n);
    }
    return s;
}

Operator dense_hamiltonian(const Generator &g, int n) {
    switch (g.kind) {
        case PulseKind::GlobalX:
            return spin_sum('X', g.qubits, n);
        case PulseKind::GlobalY:
            return spin_sum('Y', g.qubits, n);
        case PulseKind::MSXX: {
            Operator s = spin_sum('X', g.qubits, n);
            return s * s;
        }
        case PulseKind::MSYY:
        case PulseKind::SubsetMSYY: {
            Operator s = spin_sum('Y', g.qubits, n);
            return s * s;
        }
        case PulseKind::LocalZ:
            return 0.5 * embed(pauli_matrix('Z'), g.qubits.at(0), n);
        default:
            throw Error(ErrorKind::NotUnitaryKind, "no Hamiltonian");
    }
}

/// Eigendecompositions shared by every dense pulse evaluation, keyed by generator and size.
class EigenCache {
   public:
    std::shared_ptr<const HermitianEigen> get(const Generator &g, int n) {
        Key key{static_cast<int>(g.kind), g.qubits, n};
        {
            std::shared_lock lock(mutex_);
            auto it = entries_.find(key);
            if (it != entries_.end()) {
                return it->second;
            }
        }
        auto value = std::make_shared<const HermitianEigen>(eigen_hermitian(dense_hamiltonian(g, n)));
        std::unique_lock lock(mutex_);
        return entries_.try_emplace(key, std::move(value)).first->second;
    }

   private:
    using Key = std::tuple<int, std::vector<int>, int>;
    std::shared_mutex mutex_;
    std::map<Key, std::shared_ptr<const HermitianEigen>> entries_;
};

EigenCache &eigen_cache() {
    static EigenCache cache;
    return cache;
}

}  // namespace

Operator hamiltonian(const Pulse &p, int n_qubits) {
    return dense_hamiltonian(resolve(p, n_qubits), n_qubits);
}

Operator pulse_unitary(const Pulse &p, int n_qubits) {
    Generator g = resolve(p, n_qubits);
    return eigen_cache().get(g, n_qubits)->exp(p.theta);
}

Operator pulse_derivative(const Pulse &p, int n_qubits, int order) {
    Generator g = resolve(p, n_qubits);
    return eigen_cache().get(g, n_qubits)->exp(p.theta, order);
}

bool same_action(const Pulse &a, const Pulse &b, int n_qubits, double tol) {
    return (pulse_unitary(a, n_qubits) - pulse_unitary(b, n_qubits)).cwiseAbs().maxCoeff() < tol;
}

std::vector<double> generator_spectrum(const Generator &g, int n_qubits) {
    std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<double> lambda(dim);
    for (std::size_t k = 0; k < dim; k++) {
        double m = 0;
        for (int q : g.qubits) {
            m += bit_of(k, q, n_qubits) ? -0.5 : 0.5;
        }
        switch (g.kind) {
            case PulseKind::MSXX:
            case PulseKind::MSYY:
            case PulseKind::SubsetMSYY:
                lambda[k] = m * m;
                break;
            default:
                lambda[k] = m;
        }
    }
    return lambda;
}

namespace {

/// Applies the 2x2 matrix [[a, b], [c, d]] to `qubit` of every column.
void apply_single(Eigen::Ref<Operator> m, int qubit, int n, Complex a, Complex b, Complex c, Complex d) {
    const Eigen::Index stride = Eigen::Index{1} << (n - qubit);
    const Eigen::Index dim = m.rows();
    for (Eigen::Index col = 0; col < m.cols(); col++) {
        Complex *v = m.col(col).data();
        for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
            for (Eigen::Index k = base; k < base + stride; k++) {
                Complex v0 = v[k];
                Complex v1 = v[k + stride];
                v[k] = a * v0 + b * v1;
                v[k + stride] = c * v0 + d * v1;
            }
        }
    }
}

}  // namespace

void to_eigenframe(const Generator &g, int n_qubits, Eigen::Ref<Operator> m, bool inverse) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
        case PulseKind::GlobalX:
        case PulseKind::MSXX:
            for (int q : g.qubits) {
                apply_single(m, q, n_qubits, s, s, s, -s);
            }
            break;
        case PulseKind::GlobalY:
        case PulseKind::MSYY:
        case PulseKind::SubsetMSYY:
            // W = [[1, 1], [i, -i]] / sqrt(2) has the sigma_y eigenvectors as columns.
            for (int q : g.qubits) {
                if (inverse) {
                    apply_single(m, q, n_qubits, s, s, kI * s, -kI * s);
                } else {
                    apply_single(m, q, n_qubits, s, -kI * s, s, kI * s);
                }
            }
            break;
        default:
            break;
    }
}

void apply_generator(const Generator &g, double theta, int order, Eigen::Ref<Operator> m) {
    int n = qubit_count(m.rows());
    std::vector<double> lambda = generator_spectrum(g, n);
    to_eigenframe(g, n, m, false);
    for (Eigen::Index k = 0; k < m.rows(); k++) {
        Complex f = std::exp(-kI * theta * lambda[k]);
        for (int o = 0; o < order; o++) {
            f *= -kI * lambda[k];
        }
        m.row(k) *= f;
    }
    to_eigenframe(g, n, m, true);
}

void apply_generator(const Generator &g, double theta, int order, StateVector &v) {
    Eigen::Map<Operator> view(v.data(), v.size(), 1);
    apply_generator(g, theta, order, view);
}

}  // namespace qecopt
