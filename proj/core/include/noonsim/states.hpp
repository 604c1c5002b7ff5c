#pragma once

#include <complex>
#include <map>
#include <vector>

#include "noonsim/modes.hpp"

namespace noonsim {

using Complex = std::complex<double>;

/// Photon counts aligned with a register's canonical mode order.
class OccupationVector {
public:
    OccupationVector() = default;
    /// Throws std::invalid_argument on negative counts.
    explicit OccupationVector(std::vector<int> counts);

    std::size_t size() const { return counts_.size(); }
    int operator[](std::size_t i) const { return counts_[i]; }
    const std::vector<int>& counts() const { return counts_; }
    int total() const;

    /// Copy with counts_[i] += delta (result must stay non-negative).
    OccupationVector shifted(std::size_t i, int delta) const;
    /// Copy with the given positions removed (positions must be sorted).
    OccupationVector erased(const std::vector<std::size_t>& sorted_positions) const;

    auto operator<=>(const OccupationVector&) const = default;

private:
    std::vector<int> counts_;
};

/// A sparse complex amplitude map over occupation vectors of one register.
///
/// States may be sub-normalized: norm_sq() is the cumulative success
/// probability of all conditioning applied so far. Amplitudes below the
/// pruning threshold are dropped on construction. Instances are immutable.
class PureState {
public:
    using Amplitudes = std::map<OccupationVector, Complex>;

    static constexpr double kPruneThreshold = 1e-12;
    static constexpr int kMaxPhotons = 16;

    PureState();  // vacuum over the empty register
    /// Throws if an occupation length mismatches the register or the
    /// photon cap is exceeded. Prunes amplitudes below `prune_threshold`.
    PureState(Register reg, Amplitudes amps, double prune_threshold = kPruneThreshold);

    static PureState vacuum(const Register& reg);

    const Register& reg() const { return reg_; }
    const Amplitudes& amplitudes() const { return amps_; }
    std::size_t term_count() const { return amps_.size(); }
    Complex amplitude(const OccupationVector& occ) const;

    double norm_sq() const;
    PureState scaled(Complex factor) const;

private:
    Register reg_;
    Amplitudes amps_;
};

/// Unit-norm basis state |occ> over the register.
PureState make_basis_state(const Register& reg, const OccupationVector& occ);

/// Product state over the canonical union of two disjoint registers.
/// norm_sq factorizes. Throws on overlapping modes.
PureState tensor(const PureState& a, const PureState& b);

/// <a|b>, conjugate-linear in `a`. Registers must match.
Complex inner_product(const PureState& a, const PureState& b);

double norm_sq(const PureState& s);

/// Weighted mixture of pure branches. A pure state is the single-branch
/// ensemble with weight 1 (implicit conversion). trace = sum of
/// weight * norm_sq over branches.
class StateEnsemble {
public:
    struct Branch {
        double weight = 1.0;
        PureState state;
    };

    StateEnsemble() = default;
    StateEnsemble(const PureState& s);  // NOLINT: intentional implicit lift
    /// Branches must share one register; weights must be >= 0.
    explicit StateEnsemble(std::vector<Branch> branches);

    const std::vector<Branch>& branches() const { return branches_; }
    std::size_t branch_count() const { return branches_.size(); }
    const Register& reg() const;
    double trace() const;

private:
    std::vector<Branch> branches_;
};

double trace(const StateEnsemble& ens);

/// Scales weights so the trace is 1. Throws std::domain_error on zero trace.
StateEnsemble normalize(const StateEnsemble& ens);

/// sum_i w_i |<target|psi_i>|^2 / trace. `target` must be unit-norm;
/// throws std::domain_error on zero trace.
double fidelity_to_pure(const StateEnsemble& ens, const PureState& target);

}  // namespace noonsim
