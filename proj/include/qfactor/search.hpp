#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "qfactor/simulator.hpp"
#include "qfactor/synthesis.hpp"

namespace qfactor {

// ---------------------------------------------------------------------------
// Exhaustive oracle
// ---------------------------------------------------------------------------

/// Runs every data basis state through the labeling circuit and keeps those
/// the final label marks feasible. Labeling circuits permute basis states,
/// so each probe is a classical bit trace.
inline std::vector<Assignment> exhaustive_search(const Circuit& circuit,
                                                 const QubitLayout& layout,
                                                 int data_cap = 20) {
    const int d = layout.data_count();
    if (d > data_cap)
        throw CapacityError("exhaustive search over " + std::to_string(d) +
                            " data qubits exceeds cap " + std::to_string(data_cap));
    const CompiledPermutation perm = CompiledPermutation::from(circuit);
    const std::uint64_t label_mask = std::uint64_t{1} << layout.final_label;
    std::vector<Assignment> feasible;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << d); ++bits) {
        if (!(perm.apply(bits) & label_mask)) continue;
        Assignment a;
        for (int k = 0; k < d; ++k)
            a[layout.data_vars[static_cast<std::size_t>(k)]] = (bits >> k) & 1;
        feasible.push_back(std::move(a));
    }
    return feasible;
}

// ---------------------------------------------------------------------------
// Variational search
// ---------------------------------------------------------------------------

/// One rotation angle per data qubit; the preparation layer is a single
/// RY(theta_k) on each.
struct Ansatz {
    std::vector<double> angles;
};

struct VqsConfig {
    double step{0.3};
    int max_iters{500};
    double tolerance{1e-6};
    double success_threshold{0.9};
    std::uint64_t seed{1};
    double init_jitter{0.1}; // breaks the symmetric saddle at all-pi/2
    bool record_trajectory{false};
};

struct VqsIterate {
    int iteration{0};
    std::vector<double> angles;
    double cost{0.0};
    double label_probability{0.0};
};

struct VqsResult {
    Ansatz ansatz;
    LabelReadout readout;
    int iterations{0};
    double final_cost{1.0};
    double label_probability{0.0};
    bool converged{false};
    std::vector<VqsIterate> trajectory;
};

inline StateVector prepare_and_run(const Ansatz& angles, const Circuit& circuit,
                                   const QubitLayout& layout) {
    StateVector s = StateVector::zero_state(circuit.num_qubits());
    for (int k = 0; k < layout.data_count(); ++k)
        s.apply(Gate::ry(angles.angles[static_cast<std::size_t>(k)], k));
    for (const Gate& g : circuit.gates()) s.apply(g);
    return s;
}

/// Cost is the infeasibility weight 1 - P(final label = 1), computed exactly
/// from the state vector.
inline double vqs_cost(const Ansatz& angles, const Circuit& circuit,
                       const QubitLayout& layout) {
    const StateVector s = prepare_and_run(angles, circuit, layout);
    return 1.0 - label_probability(s, layout.final_label);
}

/// Parameter-shift gradient, exact for RY generators:
/// dC/dt_k = (C(t_k + pi/2) - C(t_k - pi/2)) / 2.
inline std::vector<double> vqs_gradient(const Ansatz& angles, const Circuit& circuit,
                                        const QubitLayout& layout) {
    std::vector<double> grad(angles.angles.size(), 0.0);
    for (std::size_t k = 0; k < angles.angles.size(); ++k) {
        Ansatz plus = angles, minus = angles;
        plus.angles[k] += M_PI / 2;
        minus.angles[k] -= M_PI / 2;
        grad[k] = (vqs_cost(plus, circuit, layout) - vqs_cost(minus, circuit, layout)) / 2;
    }
    return grad;
}

/// Plain gradient descent from pi/2 plus a seeded jitter. Stops on the label
/// probability threshold, a stalled cost, or the iteration cap; `converged`
/// reports whether the threshold was met.
inline VqsResult vqs_optimize(const VqsConfig& config, const Circuit& circuit,
                              const QubitLayout& layout) {
    const int d = layout.data_count();
    std::mt19937_64 rng(config.seed);
    Ansatz angles;
    angles.angles.resize(static_cast<std::size_t>(d));
    for (double& a : angles.angles) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53; // [0,1)
        a = M_PI / 2 + config.init_jitter * (2 * u - 1);
    }

    VqsResult result;
    double prev_cost = 2.0;
    int iter = 0;
    for (; iter < config.max_iters; ++iter) {
        const double cost = vqs_cost(angles, circuit, layout);
        const double p = 1.0 - cost;
        if (config.record_trajectory)
            result.trajectory.push_back({iter, angles.angles, cost, p});
        if (p >= config.success_threshold) {
            result.converged = true;
            break;
        }
        if (std::abs(prev_cost - cost) < config.tolerance) break;
        prev_cost = cost;
        const std::vector<double> grad = vqs_gradient(angles, circuit, layout);
        for (std::size_t k = 0; k < angles.angles.size(); ++k)
            angles.angles[k] -= config.step * grad[k];
    }

    result.ansatz = angles;
    result.iterations = iter;
    result.final_cost = vqs_cost(angles, circuit, layout);
    result.label_probability = 1.0 - result.final_cost;
    if (result.label_probability > 0.0) {
        const StateVector s = prepare_and_run(angles, circuit, layout);
        result.readout = conditional_distribution(s, layout.final_label,
                                                  layout.data_count());
    }
    return result;
}

// ---------------------------------------------------------------------------
// Factor reconstruction
// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<bool> bit_from(const Assignment& a, const ReducedSystem& red,
                                    Variable v) {
    // Follow alias chains through the binding list, falling back to the
    // assignment for free representatives.
    for (int guard = 0; guard < 64; ++guard) {
        auto it = a.find(v);
        if (it != a.end()) return it->second;
        bool advanced = false;
        for (const Binding& b : red.bindings) {
            if (b.var != v) continue;
            if (b.is_const) return b.value;
            v = b.alias;
            advanced = true;
            break;
        }
        if (!advanced) return std::nullopt;
    }
    return std::nullopt;
}

} // namespace detail

/// Rebuilds integer factors from a feasible assignment plus the bindings:
/// bit 0 of each factor is 1 by construction, interior bits come from the
/// assignment or the binding set. Pairs not multiplying to N are discarded;
/// unordered duplicates collapse.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>>
extract_factors(const std::vector<Assignment>& assignments,
                const ReducedSystem& reduced) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> found;
    for (const Assignment& a : assignments) {
        // Unconstrained unbound bits (possible for degenerate inputs) get both
        // values tried; `pending` collects them.
        std::vector<Variable> pending;
        auto resolve = [&](Variable v) -> std::optional<bool> {
            auto r = detail::bit_from(a, reduced, v);
            if (!r.has_value()) pending.push_back(v);
            return r;
        };
        std::uint64_t p = 1, q = 1;
        for (int k = 1; k < reduced.n_p; ++k) {
            auto b = resolve(p_bit(k));
            if (b.has_value() && *b) p |= std::uint64_t{1} << k;
        }
        for (int k = 1; k < reduced.n_q; ++k) {
            auto b = resolve(q_bit(k));
            if (b.has_value() && *b) q |= std::uint64_t{1} << k;
        }
        std::vector<std::pair<std::uint64_t, std::uint64_t>> candidates;
        if (pending.empty()) {
            candidates.emplace_back(p, q);
        } else if (pending.size() <= 8) {
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pending.size());
                 ++bits) {
                std::uint64_t pp = p, qq = q;
                for (std::size_t i = 0; i < pending.size(); ++i) {
                    if (!((bits >> i) & 1)) continue;
                    const Variable& v = pending[i];
                    if (v.kind == VarKind::PBit) pp |= std::uint64_t{1} << v.a;
                    if (v.kind == VarKind::QBit) qq |= std::uint64_t{1} << v.a;
                }
                candidates.emplace_back(pp, qq);
            }
        }
        for (auto [pp, qq] : candidates) {
            if (pp > qq) std::swap(pp, qq);
            if (pp > 1 && pp * qq == reduced.n_value) found.emplace(pp, qq);
        }
    }
    if (found.empty())
        throw NoValidFactorsError("no assignment reconstructs to factors of " +
                                  std::to_string(reduced.n_value));
    return {found.begin(), found.end()};
}

} // namespace qfactor
