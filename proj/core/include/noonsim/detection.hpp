#pragma once

#include <vector>

#include "noonsim/states.hpp"

namespace noonsim {

/// Ideal photon-number-resolving detector, or on-off detector with
/// efficiency eta. The two are distinct conditioning rules: pnr projects
/// onto an exact count, on-off applies the POVM
///   no click: sum_n (1-eta)^n |n><n|,   click: I - (no click).
struct DetectorModel {
    enum class Kind { pnr, on_off };

    Kind kind = Kind::pnr;
    double eta = 1.0;

    static DetectorModel pnr() { return {Kind::pnr, 1.0}; }
    static DetectorModel on_off(double eta);

    bool is_pnr() const { return kind == Kind::pnr; }
};

struct Projection {
    double probability = 0.0;
    PureState state;
};

struct Conditioned {
    double probability = 0.0;
    StateEnsemble ensemble;
};

/// Keeps amplitudes whose total count over `modes` equals n and removes
/// those modes from the register; probability = kept norm^2.
/// With more than one detected mode only n = 0 is allowed (for n > 0 the
/// surviving detected patterns would differ and the residue is not pure).
Projection project_pnr(const PureState& state, const std::vector<ModeId>& modes, int n);

/// Branch-wise projection; probability is the resulting trace.
Conditioned project_pnr(const StateEnsemble& ens, const std::vector<ModeId>& modes, int n);

/// On-off no-click conditioning: each branch splits by the occupation
/// pattern of the detected modes, the n-photon sector is weighted by
/// (1-eta)^n, and the detected modes are traced out. Output branches are
/// ordered by input branch, then lexicographically by detected pattern.
/// probability = resulting trace.
Conditioned condition_no_click(const StateEnsemble& ens, const std::vector<ModeId>& modes,
                               double eta);

/// Click complement: the n-sector is weighted by 1 - (1-eta)^n. For any
/// input, click and no-click probabilities sum to the input trace.
Conditioned condition_click(const StateEnsemble& ens, const std::vector<ModeId>& modes,
                            double eta);

/// Removes modes, branching per detected pattern; preserves the trace.
StateEnsemble trace_out(const StateEnsemble& ens, const std::vector<ModeId>& modes);

}  // namespace noonsim
