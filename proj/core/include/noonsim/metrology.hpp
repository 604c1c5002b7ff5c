#pragma once

#include <vector>

#include "noonsim/states.hpp"

namespace noonsim {

/// One sweep row. delta_phi values are NaN where the sensitivity is
/// undefined (fringe extremum).
struct MetrologyResult {
    double eta = 1.0;
    double phi = 0.0;
    double parity = 0.0;
    double delta_phi_numeric = 0.0;
    double delta_phi_closed = 0.0;
    double fidelity = 1.0;
};

/// Fidelity of the on-off-heralded 4004 ensemble to the ideal 4004 state:
/// 3 / ((2-eta)^2 (4 - 4 eta + 3 eta^2)). eta must be in [0, 1].
double fidelity_formula(double eta);

/// Mach-Zehnder parity read-out on a single path's (H, V) register:
/// applies a phi phase on V, a pi/4 polarization rotation, and returns the
/// normalized expectation of (-1)^(photon count in V). Result in [-1, 1].
/// For the minus-signed 4004 state the fringe is -cos(4 phi); for the plus
/// NOON it is +cos(4 phi).
double mz_parity(const StateEnsemble& ens, double phi);

/// Error-propagation sensitivity sqrt(1 - <P>^2) / |d<P>/dphi| with a
/// central difference (h = 1e-5). Throws std::domain_error when the
/// derivative magnitude is below 1e-9 (fringe extremum).
double phase_sensitivity_numeric(const StateEnsemble& ens, double phi);

/// Closed form for the heralded ensemble:
///   (1/4) sqrt(1/F^2 - [(1-eta)^4 - cos(4 phi)]^2) / |sin(4 phi)|
/// with F = fidelity_formula(eta). Throws std::domain_error at
/// sin(4 phi) = 0.
double phase_sensitivity_closed(double eta, double phi);

/// (1/4) sqrt(1/F^2 - (1-eta)^8): the closed form at sin(4 phi) = 1.
/// The true minimum over phi lies marginally below this for eta < 1 (by
/// less than 1e-4 over [0, 1]); they agree exactly at eta = 1.
double sensitivity_bound(double eta);

/// Smallest efficiency whose sensitivity_bound reaches `target`, by
/// bisection to 1e-6. target must be in [1/4, 1/2]; target = 1/2 gives
/// 0.518031 (the shot-noise crossing), target = 1/4
/// gives 1.0. Throws std::domain_error if no root exists in [0, 1].
double threshold_efficiency(double target = 0.5);

/// Simulates the heralded 4004 ensemble for each eta and evaluates parity
/// and sensitivities on each phi; rows are eta-major, then phi, and the
/// fidelity column is the simulated fidelity to the ideal 4004 state.
std::vector<MetrologyResult> sweep(const std::vector<double>& eta_grid,
                                   const std::vector<double>& phi_grid);

}  // namespace noonsim
