#include "noonsim/states.hpp"

#include <cmath>
#include <stdexcept>

namespace noonsim {

OccupationVector::OccupationVector(std::vector<int> counts) : counts_(std::move(counts)) {
    for (int c : counts_) {
        if (c < 0) throw std::invalid_argument("occupation: negative photon count");
    }
}

int OccupationVector::total() const {
    int sum = 0;
    for (int c : counts_) sum += c;
    return sum;
}

OccupationVector OccupationVector::shifted(std::size_t i, int delta) const {
    std::vector<int> counts = counts_;
    counts.at(i) += delta;
    return OccupationVector(std::move(counts));
}

OccupationVector OccupationVector::erased(const std::vector<std::size_t>& sorted_positions) const {
    std::vector<int> counts = counts_;
    for (auto it = sorted_positions.rbegin(); it != sorted_positions.rend(); ++it) {
        counts.erase(counts.begin() + static_cast<std::ptrdiff_t>(*it));
    }
    return OccupationVector(std::move(counts));
}

PureState::PureState() {
    amps_.emplace(OccupationVector{}, Complex{1.0, 0.0});
}

PureState::PureState(Register reg, Amplitudes amps, double prune_threshold)
    : reg_(std::move(reg)) {
    for (auto it = amps.begin(); it != amps.end();) {
        const auto& [occ, amp] = *it;
        if (occ.size() != reg_.size()) {
            throw std::invalid_argument("state: occupation length does not match register");
        }
        if (occ.total() > kMaxPhotons) {
            throw std::invalid_argument("state: photon cap (" + std::to_string(kMaxPhotons) +
                                        ") exceeded");
        }
        it = std::abs(amp) < prune_threshold ? amps.erase(it) : std::next(it);
    }
    amps_ = std::move(amps);
}

PureState PureState::vacuum(const Register& reg) {
    Amplitudes amps;
    amps.emplace(OccupationVector(std::vector<int>(reg.size(), 0)), Complex{1.0, 0.0});
    return PureState(reg, std::move(amps));
}

Complex PureState::amplitude(const OccupationVector& occ) const {
    auto it = amps_.find(occ);
    return it == amps_.end() ? Complex{} : it->second;
}

double PureState::norm_sq() const {
    double sum = 0.0;
    for (const auto& [occ, amp] : amps_) sum += std::norm(amp);
    return sum;
}

PureState PureState::scaled(Complex factor) const {
    Amplitudes amps;
    for (const auto& [occ, amp] : amps_) amps.emplace(occ, amp * factor);
    return PureState(reg_, std::move(amps));
}

PureState make_basis_state(const Register& reg, const OccupationVector& occ) {
    if (occ.size() != reg.size()) {
        throw std::invalid_argument("make_basis_state: occupation/register length mismatch");
    }
    PureState::Amplitudes amps;
    amps.emplace(occ, Complex{1.0, 0.0});
    return PureState(reg, std::move(amps));
}

PureState tensor(const PureState& a, const PureState& b) {
    Register merged = a.reg().merged(b.reg());  // throws on overlap

    // positions of a's and b's modes inside the merged canonical order
    std::vector<std::size_t> pos_a, pos_b;
    for (const auto& mode : a.reg().modes()) pos_a.push_back(*merged.index_of(mode));
    for (const auto& mode : b.reg().modes()) pos_b.push_back(*merged.index_of(mode));

    PureState::Amplitudes amps;
    for (const auto& [occ_a, amp_a] : a.amplitudes()) {
        for (const auto& [occ_b, amp_b] : b.amplitudes()) {
            std::vector<int> counts(merged.size(), 0);
            for (std::size_t i = 0; i < pos_a.size(); ++i) counts[pos_a[i]] = occ_a[i];
            for (std::size_t i = 0; i < pos_b.size(); ++i) counts[pos_b[i]] = occ_b[i];
            amps[OccupationVector(std::move(counts))] += amp_a * amp_b;
        }
    }
    return PureState(merged, std::move(amps));
}

Complex inner_product(const PureState& a, const PureState& b) {
    if (!(a.reg() == b.reg())) {
        throw std::invalid_argument("inner_product: register mismatch");
    }
    Complex sum{};
    const auto& bigger = a.term_count() <= b.term_count() ? b : a;
    const auto& smaller = a.term_count() <= b.term_count() ? a : b;
    for (const auto& [occ, amp] : smaller.amplitudes()) {
        auto it = bigger.amplitudes().find(occ);
        if (it == bigger.amplitudes().end()) continue;
        // conjugate-linear in the first argument
        if (&smaller == &a) {
            sum += std::conj(amp) * it->second;
        } else {
            sum += std::conj(it->second) * amp;
        }
    }
    return sum;
}

double norm_sq(const PureState& s) { return s.norm_sq(); }

StateEnsemble::StateEnsemble(const PureState& s) : branches_{{1.0, s}} {}

StateEnsemble::StateEnsemble(std::vector<Branch> branches) : branches_(std::move(branches)) {
    for (const auto& branch : branches_) {
        if (branch.weight < 0.0) {
            throw std::invalid_argument("ensemble: negative branch weight");
        }
        if (!(branch.state.reg() == branches_.front().state.reg())) {
            throw std::invalid_argument("ensemble: branches over different registers");
        }
    }
}

const Register& StateEnsemble::reg() const {
    if (branches_.empty()) {
        static const Register kEmpty;
        return kEmpty;
    }
    return branches_.front().state.reg();
}

double StateEnsemble::trace() const {
    double sum = 0.0;
    for (const auto& branch : branches_) sum += branch.weight * branch.state.norm_sq();
    return sum;
}

double trace(const StateEnsemble& ens) { return ens.trace(); }

StateEnsemble normalize(const StateEnsemble& ens) {
    double tr = ens.trace();
    if (tr <= 0.0) throw std::domain_error("normalize: zero-trace ensemble");
    std::vector<StateEnsemble::Branch> branches = ens.branches();
    for (auto& branch : branches) branch.weight /= tr;
    return StateEnsemble(std::move(branches));
}

double fidelity_to_pure(const StateEnsemble& ens, const PureState& target) {
    if (std::abs(target.norm_sq() - 1.0) > 1e-8) {
        throw std::invalid_argument("fidelity_to_pure: target is not unit-norm");
    }
    double tr = ens.trace();
    if (tr <= 0.0) throw std::domain_error("fidelity_to_pure: zero-trace ensemble");
    double sum = 0.0;
    for (const auto& branch : ens.branches()) {
        sum += branch.weight * std::norm(inner_product(target, branch.state));
    }
    return sum / tr;
}

}  // namespace noonsim
