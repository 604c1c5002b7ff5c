#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "noonsim/circuits.hpp"
#include "noonsim/detection.hpp"
#include "noonsim/transforms.hpp"
#include "op_poly.hpp"

namespace testutil {

using noonsim::Complex;
using noonsim::OccupationVector;
using noonsim::PureState;
using noonsim::Register;
using noonsim::StateEnsemble;

inline bool approx(double a, double b, double tol = 1e-10) { return std::abs(a - b) <= tol; }

inline bool approx(Complex a, Complex b, double tol = 1e-10) { return std::abs(a - b) <= tol; }

// equality up to a global phase: norms match and the overlap is maximal
inline bool states_equal_up_to_phase(const PureState& a, const PureState& b,
                                     double tol = 1e-10) {
    double na = a.norm_sq();
    double nb = b.norm_sq();
    if (std::abs(na - nb) > tol) return false;
    if (na < tol) return true;
    double overlap = std::abs(noonsim::inner_product(a, b));
    return std::abs(overlap * overlap - na * nb) <= tol * na * nb + tol;
}

inline bool states_equal(const PureState& a, const PureState& b, double tol = 1e-10) {
    if (!(a.reg() == b.reg())) return false;
    for (const auto& [occ, amp] : a.amplitudes()) {
        if (std::abs(amp - b.amplitude(occ)) > tol) return false;
    }
    for (const auto& [occ, amp] : b.amplitudes()) {
        if (std::abs(amp - a.amplitude(occ)) > tol) return false;
    }
    return true;
}

// branch-by-branch comparison after sorting; branches match up to phase
inline bool ensembles_equal_up_to_phase(const StateEnsemble& a, const StateEnsemble& b,
                                        double tol = 1e-9) {
    if (a.branch_count() != b.branch_count()) return false;
    auto sorted = [](const StateEnsemble& e) {
        std::vector<StateEnsemble::Branch> branches = e.branches();
        std::sort(branches.begin(), branches.end(), [](const auto& x, const auto& y) {
            double mx = x.weight * x.state.norm_sq();
            double my = y.weight * y.state.norm_sq();
            if (std::abs(mx - my) > 1e-14) return mx < my;
            return x.state.amplitudes().begin()->first < y.state.amplitudes().begin()->first;
        });
        return branches;
    };
    auto ba = sorted(a);
    auto bb = sorted(b);
    for (std::size_t i = 0; i < ba.size(); ++i) {
        double ma = ba[i].weight * ba[i].state.norm_sq();
        double mb = bb[i].weight * bb[i].state.norm_sq();
        if (std::abs(ma - mb) > tol) return false;
        PureState sa = ba[i].state.scaled(std::sqrt(ba[i].weight));
        PureState sb = bb[i].state.scaled(std::sqrt(bb[i].weight));
        if (!states_equal_up_to_phase(sa, sb, tol)) return false;
    }
    return true;
}

// ---- randomized inputs (fixed seeds; deterministic suite) ------------------

// Haar-ish random unitary via Gram-Schmidt on a complex Gaussian matrix.
inline std::vector<Complex> random_unitary(std::size_t dim, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
    for (auto& col : cols) {
        for (auto& entry : col) entry = Complex{gauss(rng), gauss(rng)};
    }
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex dot{};
            for (std::size_t i = 0; i < dim; ++i) dot += std::conj(cols[k][i]) * cols[j][i];
            for (std::size_t i = 0; i < dim; ++i) cols[j][i] -= dot * cols[k][i];
        }
        double norm = 0.0;
        for (const auto& entry : cols[j]) norm += std::norm(entry);
        norm = std::sqrt(norm);
        for (auto& entry : cols[j]) entry /= norm;
    }
    std::vector<Complex> m(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) m[i * dim + j] = cols[j][i];
    }
    return m;
}

// random normalized state with <= max_photons photons over the register
inline PureState random_state(const Register& reg, int max_photons, std::mt19937& rng,
                              int terms = 6) {
    std::uniform_int_distribution<int> count(0, max_photons);
    std::normal_distribution<double> gauss(0.0, 1.0);
    PureState::Amplitudes amps;
    for (int t = 0; t < terms; ++t) {
        int total = count(rng);
        std::vector<int> occ(reg.size(), 0);
        std::uniform_int_distribution<std::size_t> pick(0, reg.size() - 1);
        for (int p = 0; p < total; ++p) occ[pick(rng)] += 1;
        amps[OccupationVector(occ)] += Complex{gauss(rng), gauss(rng)};
    }
    PureState raw(reg, std::move(amps));
    double n = raw.norm_sq();
    if (n == 0.0) return PureState::vacuum(reg);
    return raw.scaled(1.0 / std::sqrt(n));
}

// brute-force POVM weight sum, independent of condition_no_click/click:
// sum over amplitudes of w(total photons in detected modes) * |amp|^2
template <typename WeightFn>
double povm_weight_oracle(const StateEnsemble& ens, const std::vector<noonsim::ModeId>& modes,
                          WeightFn weight) {
    double sum = 0.0;
    for (const auto& branch : ens.branches()) {
        for (const auto& [occ, amp] : branch.state.amplitudes()) {
            int n = 0;
            for (const auto& mode : modes) {
                n += occ[*branch.state.reg().index_of(mode)];
            }
            sum += branch.weight * weight(n) * std::norm(amp);
        }
    }
    return sum;
}

// PureState from an oracle polynomial over a register whose canonical mode
// order matches the polynomial's variable order
inline PureState state_from_poly(const Register& reg, const oracle::OpPoly& poly) {
    PureState::Amplitudes amps;
    for (const auto& [powers, amp] : poly.fock_amplitudes()) {
        amps[OccupationVector(powers)] = amp;
    }
    return PureState(reg, std::move(amps));
}

}  // namespace testutil
