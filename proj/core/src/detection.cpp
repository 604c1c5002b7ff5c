#include "noonsim/detection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace noonsim {

namespace {

constexpr double kBranchMassFloor = 1e-24;

std::vector<std::size_t> detected_positions(const Register& reg,
                                            const std::vector<ModeId>& modes) {
    if (modes.empty()) throw std::invalid_argument("detection: empty mode list");
    std::vector<std::size_t> positions;
    positions.reserve(modes.size());
    for (const auto& mode : modes) {
        auto idx = reg.index_of(mode);
        if (!idx) {
            throw std::invalid_argument("detection: mode " + to_string(mode) +
                                        " not in register");
        }
        positions.push_back(*idx);
    }
    std::sort(positions.begin(), positions.end());
    if (std::adjacent_find(positions.begin(), positions.end()) != positions.end()) {
        throw std::invalid_argument("detection: duplicate detected mode");
    }
    return positions;
}

void check_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("detection: eta must be in [0, 1]");
    }
}

// Splits one pure branch by the detected-mode occupation pattern and folds
// weight_fn(total detected photons) into the branch weights. Detected modes
// are removed; basis states factorize, so amplitudes carry over unchanged.
void split_branch(const StateEnsemble::Branch& branch, const std::vector<std::size_t>& positions,
                  const Register& remaining, const std::function<double(int)>& weight_fn,
                  std::vector<StateEnsemble::Branch>& out) {
    std::map<OccupationVector, PureState::Amplitudes> by_pattern;
    for (const auto& [occ, amp] : branch.state.amplitudes()) {
        std::vector<int> pattern;
        pattern.reserve(positions.size());
        for (std::size_t p : positions) pattern.push_back(occ[p]);
        by_pattern[OccupationVector(std::move(pattern))].emplace(occ.erased(positions), amp);
    }
    for (auto& [pattern, amps] : by_pattern) {
        double weight = branch.weight * weight_fn(pattern.total());
        if (weight == 0.0) continue;
        PureState state(remaining, std::move(amps));
        if (weight * state.norm_sq() < kBranchMassFloor) continue;
        out.push_back({weight, std::move(state)});
    }
}

Conditioned condition_povm(const StateEnsemble& ens, const std::vector<ModeId>& modes,
                           const std::function<double(int)>& weight_fn) {
    auto positions = detected_positions(ens.reg(), modes);
    Register remaining = ens.reg().without(modes);
    std::vector<StateEnsemble::Branch> branches;
    for (const auto& branch : ens.branches()) {
        split_branch(branch, positions, remaining, weight_fn, branches);
    }
    if (branches.empty()) {
        branches.push_back({1.0, PureState(remaining, {})});
    }
    StateEnsemble out(std::move(branches));
    return {out.trace(), std::move(out)};
}

}  // namespace

DetectorModel DetectorModel::on_off(double eta) {
    check_eta(eta);
    return {Kind::on_off, eta};
}

Projection project_pnr(const PureState& state, const std::vector<ModeId>& modes, int n) {
    if (n < 0) throw std::invalid_argument("project_pnr: negative count");
    if (modes.size() > 1 && n > 0) {
        throw std::invalid_argument(
            "project_pnr: n > 0 over several modes has no unique detected pattern; "
            "project per mode instead");
    }
    auto positions = detected_positions(state.reg(), modes);
    Register remaining = state.reg().without(modes);

    PureState::Amplitudes kept;
    for (const auto& [occ, amp] : state.amplitudes()) {
        int total = 0;
        for (std::size_t p : positions) total += occ[p];
        if (total == n) kept.emplace(occ.erased(positions), amp);
    }
    PureState out(remaining, std::move(kept));
    return {out.norm_sq(), std::move(out)};
}

Conditioned project_pnr(const StateEnsemble& ens, const std::vector<ModeId>& modes, int n) {
    std::vector<StateEnsemble::Branch> branches;
    Register remaining = ens.reg().without(modes);
    for (const auto& branch : ens.branches()) {
        Projection projected = project_pnr(branch.state, modes, n);
        if (branch.weight * projected.probability < kBranchMassFloor) continue;
        branches.push_back({branch.weight, std::move(projected.state)});
    }
    if (branches.empty()) {
        branches.push_back({1.0, PureState(remaining, {})});
    }
    StateEnsemble out(std::move(branches));
    return {out.trace(), std::move(out)};
}

Conditioned condition_no_click(const StateEnsemble& ens, const std::vector<ModeId>& modes,
                               double eta) {
    check_eta(eta);
    return condition_povm(ens, modes,
                          [eta](int n) { return std::pow(1.0 - eta, n); });
}

Conditioned condition_click(const StateEnsemble& ens, const std::vector<ModeId>& modes,
                            double eta) {
    check_eta(eta);
    return condition_povm(ens, modes,
                          [eta](int n) { return 1.0 - std::pow(1.0 - eta, n); });
}

StateEnsemble trace_out(const StateEnsemble& ens, const std::vector<ModeId>& modes) {
    return condition_povm(ens, modes, [](int) { return 1.0; }).ensemble;
}

}  // namespace noonsim
