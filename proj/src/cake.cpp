#include "qprot/cake.hpp"

#include <algorithm>
#include <cmath>

#include "qprot/amino.hpp"
#include "qprot/rng.hpp"

namespace qprot {

namespace {

constexpr double kMassTol = 1e-15;

std::vector<ControlBit> value_controls_except(std::size_t pattern, int n_value, int skip) {
    std::vector<ControlBit> controls;
    controls.reserve(static_cast<std::size_t>(n_value) - 1);
    for (int b = 0; b < n_value; ++b) {
        if (b == skip) continue;
        controls.push_back({b, ((pattern >> b) & 1) != 0});
    }
    return controls;
}

std::vector<ControlBit> value_controls(std::size_t pattern, int n_value) {
    return value_controls_except(pattern, n_value, -1);
}

int lowest_zero_bit(std::size_t pattern, int n_value) {
    for (int b = 0; b < n_value; ++b)
        if (!((pattern >> b) & 1)) return b;
    return -1;
}

// Moves the single populated carrier state from `from` to `to` with one
// controlled X per differing bit. Bits are set before they are cleared so no
// intermediate pattern collides with an already initialized state.
void emit_walk(Circuit& c, std::size_t from, std::size_t to, int n_value) {
    std::size_t cur = from;
    for (int b = 0; b < n_value; ++b) {
        const std::size_t bit = std::size_t{1} << b;
        if ((to & bit) && !(cur & bit)) {
            c.append(Gate::x(b).with_controls(value_controls_except(cur, n_value, b)));
            cur |= bit;
        }
    }
    for (int b = 0; b < n_value; ++b) {
        const std::size_t bit = std::size_t{1} << b;
        if (!(to & bit) && (cur & bit)) {
            c.append(Gate::x(b).with_controls(value_controls_except(cur, n_value, b)));
            cur &= ~bit;
        }
    }
}

}  // namespace

CakePlan cake_angles(std::span<const double> prob_row, int n_value_qubits) {
    if (n_value_qubits < 1 || n_value_qubits >= StateVector::kMaxQubits)
        throw Error("unsupported value-register size");
    const std::size_t dim = std::size_t{1} << n_value_qubits;
    if (prob_row.size() > dim) throw InvalidDistributionError("probability row longer than the register");

    double total = 0.0;
    for (double p : prob_row) {
        if (p < 0.0) throw InvalidDistributionError("negative probability entry");
        total += p;
    }
    if (total > 1.0 + 1e-9) throw InvalidDistributionError("probabilities sum past 1");

    CakePlan plan;
    plan.n_value_qubits = n_value_qubits;
    plan.thetas.assign(dim, 0.0);
    const double residual_sq = std::max(0.0, 1.0 - total);
    plan.residual = std::sqrt(residual_sq);

    // suffix sums keep the denominator exact at mass exhaustion
    std::vector<double> suffix(prob_row.size() + 1, 0.0);
    for (std::size_t j = prob_row.size(); j-- > 0;) suffix[j] = suffix[j + 1] + prob_row[j];

    for (std::size_t j = 0; j < prob_row.size(); ++j) {
        const double p = prob_row[j];
        if (p <= 0.0) continue;
        plan.active.push_back(j);
        const double denom = suffix[j] + residual_sq;  // 1 - sum_{k<j} P_k
        if (denom <= kMassTol) continue;               // theta stays 0
        const double arg = std::clamp(std::sqrt(std::min(1.0, p / denom)), 0.0, 1.0);
        plan.thetas[j] = 2.0 * std::acos(arg);
    }
    return plan;
}

Circuit build_cake_circuit(const CakePlan& plan) {
    const int nv = plan.n_value_qubits;
    const int lambda = nv;
    const std::size_t all_ones = (std::size_t{1} << nv) - 1;
    Circuit c(nv + 1);

    if (plan.active.empty()) {
        // nothing to initialize: the full unit of mass is residual
        for (int b = 0; b < nv; ++b) c.append(Gate::x(b));
        c.append(Gate::x(lambda));
        return c;
    }

    std::size_t carrier = 0;
    for (std::size_t idx = 0; idx < plan.active.size(); ++idx) {
        const std::size_t j = plan.active[idx];
        if (idx == 0 && j != 0) {
            // single populated state so plain X gates suffice
            for (int b = 0; b < nv; ++b)
                if ((j >> b) & 1) c.append(Gate::x(b));
        }
        carrier = j;

        const double theta = plan.thetas[j];
        const bool last = idx + 1 == plan.active.size();
        if (theta == 0.0) break;  // this state absorbs all remaining mass

        if (j == all_ones) {
            // split directly into the auxiliary qubit: the remainder is the
            // residual and already sits at its target slot
            c.append(Gate::ry(lambda, theta).with_controls(value_controls(j, nv)));
            return c;
        }

        const int q = lowest_zero_bit(j, nv);
        c.append(Gate::ry(q, theta).with_controls(value_controls_except(j, nv, q)));
        carrier = j | (std::size_t{1} << q);

        if (!last) {
            emit_walk(c, carrier, plan.active[idx + 1], nv);
        } else if (plan.residual > kMassTol) {
            emit_walk(c, carrier, all_ones, nv);
            c.append(Gate::x(lambda).with_controls(value_controls(all_ones, nv)));
        }
    }
    return c;
}

StateVector prepare_state(std::span<const double> prob_row, int n_value_qubits) {
    const CakePlan plan = cake_angles(prob_row, n_value_qubits);
    return run(build_cake_circuit(plan), StateVector::zero(n_value_qubits + 1));
}

double init_error(std::span<const double> prob_row, int n_value_qubits) {
    const CakePlan plan = cake_angles(prob_row, n_value_qubits);
    const StateVector prepared = run(build_cake_circuit(plan), StateVector::zero(n_value_qubits + 1));

    std::vector<std::complex<double>> target(prepared.amps.size(), {0.0, 0.0});
    for (std::size_t j = 0; j < prob_row.size(); ++j) target[j] = std::sqrt(std::max(0.0, prob_row[j]));
    target.back() += plan.residual;  // |1...1>|1>_aux slot

    double acc = 0.0;
    for (std::size_t k = 0; k < target.size(); ++k) acc += std::norm(prepared.amps[k] - target[k]);
    return std::sqrt(acc);
}

std::string generate_sequence(const OccurrenceMatrix& m, std::size_t length, std::uint64_t seed) {
    if (length > m.populated_positions())
        throw OutOfSupportError("requested length " + std::to_string(length) + " exceeds the " +
                                std::to_string(m.populated_positions()) + " populated positions");
    std::string out;
    out.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        const std::vector<double> row = m.row_distribution(i);
        const StateVector state = prepare_state(row, 5);
        std::mt19937_64 rng(stream_seed(seed, i));
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 4096) throw Error("generator failed to draw an amino state");
            const auto counts = sample(state, 1, rng);
            const std::uint64_t outcome = counts.begin()->first;
            const bool aux = (outcome >> 5) & 1;
            const int code = static_cast<int>(outcome & 31);
            if (aux || code >= kAlphabetSize) continue;  // residual float dust: re-draw
            out.push_back(decode_state(code).symbol);
            break;
        }
    }
    return out;
}

}  // namespace qprot
