#include "noonsim/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "noonsim/circuits.hpp"
#include "noonsim/transforms.hpp"

namespace noonsim {

namespace {

constexpr double kDerivativeStep = 1e-5;
constexpr double kDerivativeFloor = 1e-9;

// the single path of a 2-mode (H, V) register
std::string parity_path(const Register& reg) {
    if (reg.size() != 2 || reg.mode(0).path != reg.mode(1).path ||
        reg.mode(0).pol != Pol::H || reg.mode(1).pol != Pol::V) {
        throw std::invalid_argument("mz_parity: expects a single path's (H, V) register");
    }
    return reg.mode(0).path;
}

}  // namespace

double fidelity_formula(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("fidelity_formula: eta must be in [0, 1]");
    }
    return 3.0 / ((2.0 - eta) * (2.0 - eta) * (4.0 - 4.0 * eta + 3.0 * eta * eta));
}

double mz_parity(const StateEnsemble& ens, double phi) {
    std::string path = parity_path(ens.reg());
    double tr = ens.trace();
    if (tr <= 0.0) throw std::domain_error("mz_parity: zero-trace ensemble");

    ModeTransform interferometer = compose(
        {phase_shift(mode_v(path), phi), rotator(path, std::numbers::pi / 4)});

    double sum = 0.0;
    for (const auto& branch : ens.branches()) {
        PureState rotated = apply(branch.state, interferometer);
        for (const auto& [occ, amp] : rotated.amplitudes()) {
            double parity = (occ[1] % 2 == 0) ? 1.0 : -1.0;  // (-1)^(count in V)
            sum += branch.weight * parity * std::norm(amp);
        }
    }
    double result = sum / tr;
    if (std::abs(result) > 1.0 + 1e-9) {
        throw std::logic_error("mz_parity: expectation outside [-1, 1]");
    }
    return std::clamp(result, -1.0, 1.0);
}

double phase_sensitivity_numeric(const StateEnsemble& ens, double phi) {
    double plus = mz_parity(ens, phi + kDerivativeStep);
    double minus = mz_parity(ens, phi - kDerivativeStep);
    double derivative = (plus - minus) / (2.0 * kDerivativeStep);
    if (std::abs(derivative) < kDerivativeFloor) {
        throw std::domain_error("phase sensitivity undefined at a fringe extremum");
    }
    double parity = mz_parity(ens, phi);
    return std::sqrt(std::max(0.0, 1.0 - parity * parity)) / std::abs(derivative);
}

double phase_sensitivity_closed(double eta, double phi) {
    double sin4 = std::sin(4.0 * phi);
    if (std::abs(sin4) < 1e-12) {
        throw std::domain_error("phase sensitivity undefined at sin(4 phi) = 0");
    }
    double f = fidelity_formula(eta);
    double loss_term = std::pow(1.0 - eta, 4) - std::cos(4.0 * phi);
    double radicand = 1.0 / (f * f) - loss_term * loss_term;
    return 0.25 * std::sqrt(std::max(0.0, radicand)) / std::abs(sin4);
}

double sensitivity_bound(double eta) {
    double f = fidelity_formula(eta);
    return 0.25 * std::sqrt(1.0 / (f * f) - std::pow(1.0 - eta, 8));
}

double threshold_efficiency(double target) {
    if (!(target >= 0.25 && target <= 0.5)) {
        throw std::invalid_argument("threshold_efficiency: target must be in [1/4, 1/2]");
    }
    double lo = 0.0, hi = 1.0;
    if (sensitivity_bound(lo) < target) {
        throw std::domain_error("threshold_efficiency: no root in [0, 1]");
    }
    // bound is strictly decreasing from ~1.31 down to exactly 1/4
    while (hi - lo > 1e-6) {
        double mid = 0.5 * (lo + hi);
        if (sensitivity_bound(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<MetrologyResult> sweep(const std::vector<double>& eta_grid,
                                   const std::vector<double>& phi_grid) {
    if (eta_grid.empty() || phi_grid.empty()) {
        throw std::invalid_argument("sweep: empty grid");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    PureState target = noon_state("a", 4, -1);

    std::vector<MetrologyResult> rows;
    rows.reserve(eta_grid.size() * phi_grid.size());
    for (double eta : eta_grid) {
        const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
        StateEnsemble heralded =
            noon4(inv_sqrt2, inv_sqrt2, DetectorModel::on_off(eta)).output;
        double fidelity = fidelity_to_pure(heralded, target);
        for (double phi : phi_grid) {
            MetrologyResult row;
            row.eta = eta;
            row.phi = phi;
            row.parity = mz_parity(heralded, phi);
            row.fidelity = fidelity;
            try {
                row.delta_phi_numeric = phase_sensitivity_numeric(heralded, phi);
            } catch (const std::domain_error&) {
                row.delta_phi_numeric = nan;
            }
            try {
                row.delta_phi_closed = phase_sensitivity_closed(eta, phi);
            } catch (const std::domain_error&) {
                row.delta_phi_closed = nan;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace noonsim
