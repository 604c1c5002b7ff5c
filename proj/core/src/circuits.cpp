#include "noonsim/circuits.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace noonsim {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

std::pair<Complex, Complex> pol_coefficients(PolState pol) {
    switch (pol) {
        case PolState::H: return {1.0, 0.0};
        case PolState::V: return {0.0, 1.0};
        case PolState::D: return {kInvSqrt2, kInvSqrt2};
        case PolState::A: return {kInvSqrt2, -kInvSqrt2};
        case PolState::L: return {kInvSqrt2, Complex{0.0, kInvSqrt2}};
        case PolState::R: return {kInvSqrt2, Complex{0.0, -kInvSqrt2}};
    }
    throw std::invalid_argument("inject_photon: unknown polarization");
}

// factorial-free creation: a^dag |n> = sqrt(n+1) |n+1>
void add_created(PureState::Amplitudes& out, const OccupationVector& occ, Complex amp,
                 std::size_t index) {
    if (std::abs(amp) == 0.0) return;
    int n = occ[index];
    out[occ.shifted(index, +1)] += amp * std::sqrt(static_cast<double>(n + 1));
}

std::string fresh_path_name(const Register& reg, const std::string& base) {
    std::string name = base;
    int suffix = 1;
    while (!reg.modes_of_path(name).empty()) {
        name = base + std::to_string(suffix++);
    }
    return name;
}

}  // namespace

std::string_view to_string(PolState pol) {
    switch (pol) {
        case PolState::H: return "H";
        case PolState::V: return "V";
        case PolState::D: return "D";
        case PolState::A: return "A";
        case PolState::L: return "L";
        case PolState::R: return "R";
    }
    return "?";
}

PureState inject_photon(const PureState& state, std::string_view path, PolState pol) {
    auto ih = state.reg().index_of(mode_h(path));
    auto iv = state.reg().index_of(mode_v(path));
    if (!ih || !iv) {
        throw std::invalid_argument("inject_photon: path " + std::string(path) +
                                    " not fully present in register");
    }
    auto [ch, cv] = pol_coefficients(pol);
    PureState::Amplitudes out;
    for (const auto& [occ, amp] : state.amplitudes()) {
        if (occ.total() + 1 > PureState::kMaxPhotons) {
            throw std::invalid_argument("inject_photon: photon cap exceeded");
        }
        add_created(out, occ, amp * ch, *ih);
        add_created(out, occ, amp * cv, *iv);
    }
    return PureState(state.reg(), std::move(out));
}

PureState noon_state(std::string_view path, int n, int sign) {
    if (n < 1 || n > PureState::kMaxPhotons) {
        throw std::invalid_argument("noon_state: photon number out of range");
    }
    if (sign != 1 && sign != -1) throw std::invalid_argument("noon_state: sign must be +-1");
    Register reg = Register::of_paths({std::string(path)});
    PureState::Amplitudes amps;
    amps.emplace(OccupationVector({n, 0}), Complex{kInvSqrt2});
    amps.emplace(OccupationVector({0, n}), Complex{sign * kInvSqrt2});
    return PureState(reg, std::move(amps));
}

namespace {

// Conditions "no photon on `path`" with the given detector, removing that
// path. Appends the step log entry and multiplies the running probability.
StateEnsemble herald_none_on_path(const StateEnsemble& ens, const std::string& path,
                                  const DetectorModel& detector, CircuitResult& result) {
    std::vector<ModeId> modes = ens.reg().modes_of_path(path);
    double before = ens.trace();
    Conditioned conditioned =
        detector.is_pnr() ? project_pnr(ens, modes, 0)
                          : condition_no_click(ens, modes, detector.eta);
    double step = before > 0.0 ? conditioned.probability / before : 0.0;
    std::string label = "herald_none " + path +
                        (detector.is_pnr() ? std::string(" (pnr)")
                                           : " (eta=" + std::to_string(detector.eta) + ")");
    result.steps.push_back({std::move(label), step});
    result.success_prob *= step;
    return std::move(conditioned.ensemble);
}

// The deterministic 2002 preparation: two photons in the matching rotated
// basis meet a PBS and bunch into `out_path`; the emptied partner path is
// traced out (it is exactly vacuum).
PureState prepare_2002(const std::string& out_path, const std::string& aux_path,
                       HomVariant variant) {
    PureState state = PureState::vacuum(Register::of_paths({out_path, aux_path}));
    if (variant == HomVariant::DA) {
        state = inject_photon(state, out_path, PolState::D);
        state = inject_photon(state, aux_path, PolState::A);
        state = apply(state, pbs(out_path, aux_path, PbsBasis::DA));
    } else {
        state = inject_photon(state, out_path, PolState::L);
        state = inject_photon(state, aux_path, PolState::R);
        state = apply(state, pbs(out_path, aux_path, PbsBasis::LR));
    }
    auto projected = project_pnr(state, state.reg().modes_of_path(aux_path), 0);
    return projected.state;  // probability is exactly 1
}

CircuitResult noon4_on(const std::string& path_main, const std::string& path_other,
                       const std::string& aux_main, const std::string& aux_other, double t,
                       double r, const DetectorModel& detector) {
    if (std::abs(t * t + r * r - 1.0) > 1e-10) {
        throw std::invalid_argument("noon4: t^2 + r^2 must equal 1");
    }
    PureState input = tensor(prepare_2002(path_main, aux_main, HomVariant::DA),
                             prepare_2002(path_other, aux_other, HomVariant::LR));
    PureState mixed = apply(input, beam_splitter(path_main, path_other, t, r));

    CircuitResult result;
    result.output = herald_none_on_path(StateEnsemble(mixed), path_other, detector, result);
    return result;
}

}  // namespace

CircuitResult hom_2002(HomVariant variant) {
    CircuitResult result;
    result.success_prob = 1.0;
    result.output = StateEnsemble(prepare_2002("a", "b", variant));
    return result;
}

CircuitResult noon4(double t, double r, const DetectorModel& detector) {
    return noon4_on("a", "b", "c", "d", t, r, detector);
}

CircuitResult noon8(const DetectorModel& final_detector) {
    CircuitResult stage1 = noon4_on("a", "b", "c", "d", kInvSqrt2, kInvSqrt2,
                                    DetectorModel::pnr());
    CircuitResult stage2 = noon4_on("e", "f", "g", "h", kInvSqrt2, kInvSqrt2,
                                    DetectorModel::pnr());

    // pnr-conditioned stages are pure single-branch ensembles
    PureState left = stage1.output.branches().front().state;
    PureState right = stage2.output.branches().front().state;

    // quarter-pi plate: e^{i 4 delta} = -1 turns the minus NOON into plus
    left = apply(left, waveplate("a", std::numbers::pi / 4));

    PureState joined = tensor(left, right);
    joined = apply(joined, beam_splitter("a", "e", kInvSqrt2, kInvSqrt2));

    CircuitResult result;
    result.steps.push_back({"stage1 " + stage1.steps.front().label,
                            stage1.steps.front().probability});
    result.steps.push_back({"stage2 " + stage2.steps.front().label,
                            stage2.steps.front().probability});
    result.success_prob = stage1.success_prob * stage2.success_prob;
    result.output = herald_none_on_path(StateEnsemble(joined), "e", final_detector, result);
    return result;
}

CircuitResult subtract_photon(const StateEnsemble& input, std::string_view path,
                              double transmittance, double eta) {
    if (!(transmittance > 0.0 && transmittance < 1.0)) {
        throw std::invalid_argument("subtract_photon: transmittance must be in (0, 1)");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("subtract_photon: eta must be in [0, 1]");
    }
    const std::string p(path);
    if (input.reg().modes_of_path(p).size() != 2) {
        throw std::invalid_argument("subtract_photon: path " + p + " not in register");
    }
    const double reflect = std::sqrt(1.0 - transmittance * transmittance);
    const ModeId tap = mode_h(fresh_path_name(input.reg(), "tap"));
    const Register tap_reg({tap});

    ModeTransform into_da = rotator(p, -std::numbers::pi / 4);  // D component -> H mode
    ModeTransform out_of_da = rotator(p, std::numbers::pi / 4);
    ModeTransform tap_mixer = mode_mixer(mode_h(p), tap, transmittance, reflect);

    double before = input.trace();
    std::vector<StateEnsemble::Branch> tapped;
    tapped.reserve(input.branch_count());
    for (const auto& branch : input.branches()) {
        PureState s = apply(branch.state, into_da);
        s = tensor(s, PureState::vacuum(tap_reg));
        s = apply(s, tap_mixer);
        tapped.push_back({branch.weight, std::move(s)});
    }

    Conditioned clicked = condition_click(StateEnsemble(std::move(tapped)), {tap}, eta);

    CircuitResult result;
    double step = before > 0.0 ? clicked.probability / before : 0.0;
    result.steps.push_back({"herald_click " + to_string(tap) + " (eta=" + std::to_string(eta) +
                                ")",
                            step});
    result.success_prob = step;
    result.output = apply(clicked.ensemble, out_of_da);
    return result;
}

CircuitResult subtract_photon_ideal(const StateEnsemble& input, std::string_view path) {
    const std::string p(path);
    auto ih = input.reg().index_of(mode_h(p));
    auto iv = input.reg().index_of(mode_v(p));
    if (!ih || !iv) {
        throw std::invalid_argument("subtract_photon_ideal: path " + p + " not in register");
    }

    std::vector<StateEnsemble::Branch> branches;
    for (const auto& branch : input.branches()) {
        PureState::Amplitudes out;
        for (const auto& [occ, amp] : branch.state.amplitudes()) {
            // (a_H + a_V)/sqrt2 annihilation, term by term
            if (occ[*ih] > 0) {
                out[occ.shifted(*ih, -1)] +=
                    amp * kInvSqrt2 * std::sqrt(static_cast<double>(occ[*ih]));
            }
            if (occ[*iv] > 0) {
                out[occ.shifted(*iv, -1)] +=
                    amp * kInvSqrt2 * std::sqrt(static_cast<double>(occ[*iv]));
            }
        }
        PureState state(input.reg(), std::move(out));
        if (branch.weight * state.norm_sq() > 0.0) {
            branches.push_back({branch.weight, std::move(state)});
        }
    }
    StateEnsemble subtracted(std::move(branches));
    if (subtracted.trace() <= 0.0) {
        throw std::domain_error("subtract_photon_ideal: subtraction annihilated the state");
    }

    CircuitResult result;
    result.steps.push_back({"ideal subtraction (post-selected limit)", 1.0});
    result.success_prob = 1.0;
    result.output = normalize(subtracted);
    return result;
}

CircuitResult spdc_noonlike(const DetectorModel& detector) {
    Register reg = Register::of_paths({"a", "b"});
    // (|2,0;2,0> + |0,2;0,2> + |1,1;1,1>)/sqrt3 over (a.H,a.V,b.H,b.V):
    // both pairs from crystal 1, both from crystal 2, one from each
    const double c = 1.0 / std::sqrt(3.0);
    PureState::Amplitudes amps;
    amps.emplace(OccupationVector({2, 0, 2, 0}), Complex{c});
    amps.emplace(OccupationVector({0, 2, 0, 2}), Complex{c});
    amps.emplace(OccupationVector({1, 1, 1, 1}), Complex{c});
    PureState source(reg, std::move(amps));

    // exact H->D, V->A on path a; built directly so the entries are exact
    // (equivalent to a pi phase on V followed by a pi/4 rotation)
    ModeTransform da_basis(Register::of_paths({"a"}),
                           {Complex{kInvSqrt2}, Complex{kInvSqrt2}, Complex{kInvSqrt2},
                            Complex{-kInvSqrt2}});
    PureState state = apply(source, da_basis);
    state = apply(state, circular_basis("b", +1));  // H->L, V->R on path b
    state = apply(state, beam_splitter("a", "b", kInvSqrt2, kInvSqrt2));

    CircuitResult result;
    result.output = herald_none_on_path(StateEnsemble(state), "b", detector, result);
    return result;
}

namespace scripts {

const std::string_view kHomDA = R"(# polarization Hong-Ou-Mandel, 45-degree pair
paths a b
photon a D
photon b A
pbs a b DA
herald_none b
)";

const std::string_view kHomLR = R"(# polarization Hong-Ou-Mandel, circular pair
paths a b
photon a L
photon b R
pbs a b LR
herald_none b
)";

const std::string_view kNoon4 = R"(# conditional 4004 generation, balanced beam splitter
paths a b c d
photon a D
photon c A
pbs a c DA
herald_none c
photon b L
photon d R
pbs b d LR
herald_none d
bs a b 0.70710678118654752 0.70710678118654752
herald_none b
)";

const std::string_view kNoon4Eta066 = R"(# 4004 generation heralded by an on-off detector
paths a b c d
photon a D
photon c A
pbs a c DA
herald_none c
photon b L
photon d R
pbs b d LR
herald_none d
bs a b 0.70710678118654752 0.70710678118654752
herald_none b 0.66
)";

const std::string_view kNoon8 = R"(# 8008 cascade from two 4004 stages
paths a b c d
photon a D
photon c A
pbs a c DA
herald_none c
photon b L
photon d R
pbs b d LR
herald_none d
bs a b 0.70710678118654752 0.70710678118654752
herald_none b
paths e f g h
photon e D
photon g A
pbs e g DA
herald_none g
photon f L
photon h R
pbs f h LR
herald_none h
bs e f 0.70710678118654752 0.70710678118654752
herald_none f
wp a pi/4
bs a e 0.70710678118654752 0.70710678118654752
herald_none e
)";

}  // namespace scripts

}  // namespace noonsim
