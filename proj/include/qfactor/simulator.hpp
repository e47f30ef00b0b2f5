#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "qfactor/circuit.hpp"

namespace qfactor {

/// Dense 2^n amplitude vector, double precision. Qubit k is bit k of the
/// basis index (qubit 0 least significant), matching the circuit registry
/// order: data qubits first, then ancillas, then labels.
class StateVector {
public:
    static constexpr int kMaxQubits = 26;

    static StateVector zero_state(int n) {
        check_capacity(n);
        StateVector s;
        s.n_ = n;
        s.amp_.assign(std::size_t{1} << n, {0.0, 0.0});
        s.amp_[0] = {1.0, 0.0};
        return s;
    }

    /// Basis state |bits>, bits[k] for qubit k.
    static StateVector basis(int n, const std::vector<bool>& bits) {
        check_capacity(n);
        StateVector s;
        s.n_ = n;
        s.amp_.assign(std::size_t{1} << n, {0.0, 0.0});
        std::uint64_t index = 0;
        for (int k = 0; k < n && k < static_cast<int>(bits.size()); ++k)
            if (bits[static_cast<std::size_t>(k)]) index |= std::uint64_t{1} << k;
        s.amp_[index] = {1.0, 0.0};
        return s;
    }

    int num_qubits() const { return n_; }
    std::size_t size() const { return amp_.size(); }
    std::complex<double> amplitude(std::uint64_t index) const { return amp_[index]; }

    double norm() const {
        double s = 0;
        for (const auto& a : amp_) s += std::norm(a);
        return std::sqrt(s);
    }

    void apply(const Gate& g) {
        check_qubits(g);
        switch (g.kind) {
        case GateKind::X: apply_x(g.target); break;
        case GateKind::H: apply_1q(g.target, M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2); break;
        case GateKind::RY: {
            const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            apply_1q(g.target, c, -s, s, c);
            break;
        }
        default: apply_controlled_x(g); break;
        }
    }

    /// P(qubit q reads 1).
    double probability_one(int q) const {
        const std::uint64_t mask = std::uint64_t{1} << q;
        double p = 0;
        for (std::size_t i = 0; i < amp_.size(); ++i)
            if (i & mask) p += std::norm(amp_[i]);
        return p;
    }

private:
    int n_{0};
    std::vector<std::complex<double>> amp_;

    static void check_capacity(int n) {
        if (n < 0 || n > kMaxQubits)
            throw CapacityError("state of " + std::to_string(n) +
                                " qubits exceeds the " +
                                std::to_string(kMaxQubits) + "-qubit cap");
    }

    void check_qubits(const Gate& g) const {
        auto check = [this](int q) {
            if (q < 0 || q >= n_)
                throw UnknownQubitError("gate qubit " + std::to_string(q) +
                                        " outside state");
        };
        check(g.target);
        for (int q : g.controls) check(q);
    }

    void apply_x(int t) {
        const std::uint64_t mask = std::uint64_t{1} << t;
        for (std::uint64_t i = 0; i < amp_.size(); ++i)
            if (!(i & mask)) std::swap(amp_[i], amp_[i | mask]);
    }

    // M = [[a, b], [c, d]] on the target qubit.
    void apply_1q(int t, double a, double b, double c, double d) {
        const std::uint64_t mask = std::uint64_t{1} << t;
        for (std::uint64_t i = 0; i < amp_.size(); ++i) {
            if (i & mask) continue;
            const auto lo = amp_[i], hi = amp_[i | mask];
            amp_[i] = a * lo + b * hi;
            amp_[i | mask] = c * lo + d * hi;
        }
    }

    void apply_controlled_x(const Gate& g) {
        const std::uint64_t tmask = std::uint64_t{1} << g.target;
        std::uint64_t cmask = 0, want = 0;
        for (std::size_t k = 0; k < g.controls.size(); ++k) {
            const std::uint64_t bit = std::uint64_t{1} << g.controls[k];
            cmask |= bit;
            const bool positive = g.polarity.empty() || g.polarity[k];
            if (positive) want |= bit;
        }
        for (std::uint64_t i = 0; i < amp_.size(); ++i) {
            if (i & tmask) continue;
            if ((i & cmask) != want) continue;
            std::swap(amp_[i], amp_[i | tmask]);
        }
    }
};

// ---------------------------------------------------------------------------
// Circuit execution
// ---------------------------------------------------------------------------

using GateHook = std::function<void(std::size_t gate_index, const StateVector&)>;

/// Prepares |0..0>, flips the data qubits listed in `data_bits`, then applies
/// every gate. The optional hook observes the state after each gate.
inline StateVector run_circuit(const Circuit& circuit,
                               const std::vector<bool>& data_bits = {},
                               const GateHook& hook = nullptr) {
    StateVector s = StateVector::basis(circuit.num_qubits(), data_bits);
    for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
        s.apply(circuit.gates()[i]);
        if (hook) hook(i, s);
    }
    return s;
}

/// A labeling circuit compiled to control/target bit masks, for probing many
/// basis states cheaply.
struct CompiledPermutation {
    struct MaskGate {
        std::uint64_t cmask{0};
        std::uint64_t want{0};
        std::uint64_t tmask{0};
    };
    std::vector<MaskGate> gates;

    static CompiledPermutation from(const Circuit& circuit) {
        if (circuit.num_qubits() > 64)
            throw CapacityError("basis tracing supports at most 64 qubits");
        CompiledPermutation out;
        for (const Gate& g : circuit.gates()) {
            if (g.kind == GateKind::H || g.kind == GateKind::RY)
                throw ShapeMismatchError("circuit is not a basis permutation");
            MaskGate mg;
            mg.tmask = std::uint64_t{1} << g.target;
            for (std::size_t k = 0; k < g.controls.size(); ++k) {
                const std::uint64_t bit = std::uint64_t{1} << g.controls[k];
                mg.cmask |= bit;
                if (g.polarity.empty() || g.polarity[k]) mg.want |= bit;
            }
            out.gates.push_back(mg);
        }
        return out;
    }

    std::uint64_t apply(std::uint64_t bits) const {
        for (const MaskGate& g : gates)
            if ((bits & g.cmask) == g.want) bits ^= g.tmask;
        return bits;
    }
};

/// Classical fast path: every gate of a labeling circuit permutes basis
/// states, so a basis input can be traced as plain bits.
inline std::vector<bool> run_basis(const Circuit& circuit,
                                   std::vector<bool> bits) {
    bits.resize(static_cast<std::size_t>(circuit.num_qubits()), false);
    for (const Gate& g : circuit.gates()) {
        switch (g.kind) {
        case GateKind::H:
        case GateKind::RY:
            throw ShapeMismatchError("circuit is not a basis permutation");
        case GateKind::X:
            bits[static_cast<std::size_t>(g.target)] =
                !bits[static_cast<std::size_t>(g.target)];
            break;
        default: {
            bool fire = true;
            for (std::size_t k = 0; k < g.controls.size(); ++k) {
                const bool positive = g.polarity.empty() || g.polarity[k];
                if (bits[static_cast<std::size_t>(g.controls[k])] != positive) {
                    fire = false;
                    break;
                }
            }
            if (fire)
                bits[static_cast<std::size_t>(g.target)] =
                    !bits[static_cast<std::size_t>(g.target)];
            break;
        }
        }
    }
    return bits;
}

// ---------------------------------------------------------------------------
// Readout
// ---------------------------------------------------------------------------

/// Label marginal plus the data-register distribution conditioned on the
/// label reading 1.
struct LabelReadout {
    double probability{0.0};
    std::vector<std::pair<std::uint64_t, double>> conditional; // data index -> P
};

inline double label_probability(const StateVector& s, int label_qubit) {
    return s.probability_one(label_qubit);
}

inline LabelReadout conditional_distribution(const StateVector& s, int label_qubit,
                                             int num_data_qubits) {
    LabelReadout out;
    out.probability = s.probability_one(label_qubit);
    if (out.probability <= 0.0)
        throw ZeroProbabilityError("label never reads 1; nothing to condition on");
    const std::uint64_t lmask = std::uint64_t{1} << label_qubit;
    const std::uint64_t dmask = (std::uint64_t{1} << num_data_qubits) - 1;
    std::map<std::uint64_t, double> acc;
    for (std::uint64_t i = 0; i < s.size(); ++i) {
        if (!(i & lmask)) continue;
        const double p = std::norm(s.amplitude(i));
        if (p > 0.0) acc[i & dmask] += p;
    }
    for (auto& [idx, p] : acc) out.conditional.emplace_back(idx, p / out.probability);
    return out;
}

/// Multinomial sampling from |amplitude|^2; identical seeds give identical
/// counts (the uniform variate is built from raw engine output, not a
/// distribution adapter).
inline std::map<std::uint64_t, std::uint64_t>
sample(const StateVector& s, std::uint64_t shots, std::uint64_t seed) {
    std::vector<double> cdf(s.size());
    double acc = 0;
    for (std::uint64_t i = 0; i < s.size(); ++i) {
        acc += std::norm(s.amplitude(i));
        cdf[i] = acc;
    }
    std::mt19937_64 rng(seed);
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t k = 0; k < shots; ++k) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        counts[static_cast<std::uint64_t>(it - cdf.begin())]++;
    }
    return counts;
}

} // namespace qfactor
