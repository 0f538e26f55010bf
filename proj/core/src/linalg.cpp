#include "entloc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace entloc {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
    int k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

// Bit position (from the least significant end) of a 1-based qubit index.
int bit_position(int qubit, int n_qubits) { return n_qubits - qubit; }

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

StateVector::StateVector(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("StateVector: need at least one qubit");
    n_qubits_ = n_qubits;
    amplitudes_.assign(std::size_t{1} << n_qubits, Complex{});
    amplitudes_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    if (!is_power_of_two(amplitudes.size()) || amplitudes.size() < 2) {
        throw std::invalid_argument("StateVector: dimension must be a power of two >= 2");
    }
    StateVector psi;
    psi.n_qubits_ = log2_exact(amplitudes.size());
    psi.amplitudes_ = std::move(amplitudes);
    return psi;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const Complex& a : amplitudes_) s += std::norm(a);
    return std::sqrt(s);
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

EigenSystem hermitian_eigs(const ComplexMatrix& h, double hermiticity_tol) {
    if (!h.is_square()) throw std::invalid_argument("hermitian_eigs: matrix must be square");
    if (h.hermiticity_residual() > hermiticity_tol) {
        throw std::invalid_argument("hermitian_eigs: input is not Hermitian within tolerance");
    }
    const std::size_t n = h.rows();

    // Symmetrize to remove tolerance-level asymmetry before iterating.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    constexpr double kOffTol = 1e-13;
    constexpr int kMaxSweeps = 100;

    // One further sweep after crossing the threshold flushes the remaining
    // off-diagonal mass to machine level, so zero eigenvalues come out as
    // true round-off instead of O(kOffTol).
    bool final_sweep = false;
    for (int sweep = 0; sweep < kMaxSweeps && !final_sweep; ++sweep) {
        final_sweep = off_diagonal_norm(a) <= kOffTol;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;

                // Unitary plane rotation J with J(p,p)=c, J(p,q)=s*phase,
                // J(q,p)=-s*conj(phase), J(q,q)=c chosen to zero a(p,q).
                const Complex phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(phase) * akq;
                    a(k, q) = s * phase * akp + c * akq;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                a(p, p) = app - t * mag;
                a(q, q) = aqq + t * mag;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp - s * std::conj(phase) * vkq;
                    v(k, q) = s * phase * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    EigenSystem sys;
    sys.values.resize(n);
    sys.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        sys.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) sys.vectors(i, k) = v(i, order[k]);
    }
    return sys;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
    const EigenSystem sys = hermitian_eigs(h);
    const std::size_t n = h.rows();

    std::vector<double> roots(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = sys.values[k];
        if (lambda < -1e-10) {
            throw std::invalid_argument("psd_sqrt: matrix has a significantly negative eigenvalue");
        }
        roots[k] = std::sqrt(std::max(lambda, 0.0));
    }

    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex sum = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                sum += sys.vectors(i, k) * roots[k] * std::conj(sys.vectors(j, k));
            out(i, j) = sum;
        }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, int n_qubits,
                            const std::vector<int>& traced) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (!rho.is_square() || rho.rows() != dim) {
        throw std::invalid_argument("partial_trace: matrix dimension does not match qubit count");
    }

    std::vector<bool> trace_flag(static_cast<std::size_t>(n_qubits) + 1, false);
    for (int q : traced) {
        if (q < 1 || q > n_qubits) throw std::invalid_argument("partial_trace: qubit index out of range");
        trace_flag[static_cast<std::size_t>(q)] = true;
    }

    std::vector<int> kept;
    std::vector<int> gone;
    for (int q = 1; q <= n_qubits; ++q) (trace_flag[static_cast<std::size_t>(q)] ? gone : kept).push_back(q);

    const std::size_t kept_dim = std::size_t{1} << kept.size();
    const std::size_t gone_dim = std::size_t{1} << gone.size();
    if (kept.empty()) throw std::invalid_argument("partial_trace: cannot trace out every qubit");

    // Full register index for a (kept, traced) sub-index pair.
    auto full_index = [&](std::size_t kept_bits, std::size_t gone_bits) {
        std::size_t idx = 0;
        for (std::size_t a = 0; a < kept.size(); ++a) {
            const std::size_t bit = (kept_bits >> (kept.size() - 1 - a)) & 1;
            idx |= bit << bit_position(kept[a], n_qubits);
        }
        for (std::size_t a = 0; a < gone.size(); ++a) {
            const std::size_t bit = (gone_bits >> (gone.size() - 1 - a)) & 1;
            idx |= bit << bit_position(gone[a], n_qubits);
        }
        return idx;
    };

    ComplexMatrix out(kept_dim, kept_dim);
    for (std::size_t i = 0; i < kept_dim; ++i)
        for (std::size_t j = 0; j < kept_dim; ++j) {
            Complex sum = 0.0;
            for (std::size_t t = 0; t < gone_dim; ++t) sum += rho(full_index(i, t), full_index(j, t));
            out(i, j) = sum;
        }
    return out;
}

ComplexMatrix lift_single_qubit(const ComplexMatrix& op, int qubit, int n_qubits) {
    if (op.rows() != 2 || op.cols() != 2) {
        throw std::invalid_argument("lift_single_qubit: operator must be 2x2");
    }
    if (qubit < 1 || qubit > n_qubits) {
        throw std::invalid_argument("lift_single_qubit: qubit index out of range");
    }
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (int q = 1; q <= n_qubits; ++q) {
        out = (q == qubit) ? kron(out, op) : kron(out, ComplexMatrix::identity(2));
    }
    return out;
}

ComplexMatrix single_qubit_congruence(const ComplexMatrix& rho, const ComplexMatrix& op,
                                      int qubit, int n_qubits) {
    if (op.rows() != 2 || op.cols() != 2) {
        throw std::invalid_argument("single_qubit_congruence: operator must be 2x2");
    }
    if (qubit < 1 || qubit > n_qubits) {
        throw std::invalid_argument("single_qubit_congruence: qubit index out of range");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (!rho.is_square() || rho.rows() != dim) {
        throw std::invalid_argument("single_qubit_congruence: state dimension mismatch");
    }

    const std::size_t mask = std::size_t{1} << bit_position(qubit, n_qubits);
    const Complex conj_op[2][2] = {{std::conj(op(0, 0)), std::conj(op(0, 1))},
                                   {std::conj(op(1, 0)), std::conj(op(1, 1))}};

    ComplexMatrix out(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t bi = (i & mask) ? 1 : 0;
        for (std::size_t j = 0; j < dim; ++j) {
            const std::size_t bj = (j & mask) ? 1 : 0;
            Complex sum = 0.0;
            for (std::size_t a = 0; a < 2; ++a) {
                const Complex left = op(bi, a);
                if (left == Complex{}) continue;
                const std::size_t ia = a ? (i | mask) : (i & ~mask);
                for (std::size_t b = 0; b < 2; ++b) {
                    const Complex right = conj_op[bj][b];
                    if (right == Complex{}) continue;
                    const std::size_t jb = b ? (j | mask) : (j & ~mask);
                    sum += left * rho(ia, jb) * right;
                }
            }
            out(i, j) = sum;
        }
    }
    return out;
}

}  // namespace entloc
