#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "noonsim/detection.hpp"
#include "noonsim/transforms.hpp"

namespace noonsim {

/// Polarization of an injected photon. H/V are basis states; D/A/L/R are
/// the +-45 degree and circular superpositions.
enum class PolState { H, V, D, A, L, R };

std::string_view to_string(PolState pol);

/// Applies the creation operator of the given polarization on `path`.
/// Throws if the path's modes are missing or the photon cap is exceeded.
/// Note: injecting into an already occupied mode scales the norm by
/// sqrt(n+1); circuit scripts reject that.
PureState inject_photon(const PureState& state, std::string_view path, PolState pol);

/// (|n,0> + sign |0,n>)/sqrt2 over a single path's (H, V) register.
PureState noon_state(std::string_view path, int n, int sign);

struct StepProbability {
    std::string label;
    double probability = 1.0;  // conditional on the preceding steps
};

/// Outcome of a conditional circuit: success_prob is the product of the
/// per-step conditional probabilities and equals the trace of `output`.
struct CircuitResult {
    double success_prob = 1.0;
    StateEnsemble output;
    std::vector<StepProbability> steps;
};

enum class HomVariant { DA, LR };

/// Polarization Hong-Ou-Mandel: two orthogonally polarized photons meet a
/// PBS in the matching basis and bunch deterministically into one path.
/// DA yields (|2,0> - |0,2>)/sqrt2, LR yields (|2,0> + |0,2>)/sqrt2 in the
/// H/V basis; success probability 1.
CircuitResult hom_2002(HomVariant variant);

/// Conditional 4004 generation: a DA and an LR 2002 state meet a (t, r)
/// beam splitter and no photon is detected on the second output path.
/// With a pnr detector the success probability is 3 t^4 r^4 and the output
/// is the exact (|4,0> - |0,4>)/sqrt2; with an on-off detector the output
/// is a mixed ensemble. Output register is the surviving path's (H, V).
CircuitResult noon4(double t, double r, const DetectorModel& detector = DetectorModel::pnr());

/// 8008 cascade: two balanced pnr-conditioned 4004 stages, a quarter-pi
/// wave plate flipping one minus-NOON to plus, a balanced beam splitter,
/// and vacuum conditioning on one output (with `final_detector`). Exact
/// output (|8,0> - |0,8>)/sqrt2; success 3/16 * 3/16 * 35/256.
CircuitResult noon8(const DetectorModel& final_detector = DetectorModel::pnr());

/// Coherent photon subtraction (a_H + a_V)/sqrt2 via a tap: rotate the
/// path so the D component becomes H, divert it with a transmittance-T
/// mixer into a fresh ancilla mode, condition a click (on-off, efficiency
/// eta) on the ancilla, rotate back. Requires 0 < T < 1.
CircuitResult subtract_photon(const StateEnsemble& input, std::string_view path,
                              double transmittance, double eta);

/// Exact T -> 1 limit of subtract_photon conditioned on the click: applies
/// (a_H + a_V)/sqrt2 branch-wise and renormalizes. The reported success
/// probability is 1 by convention (the limit is post-selected); throws
/// std::domain_error if the subtraction annihilates the whole ensemble.
CircuitResult subtract_photon_ideal(const StateEnsemble& input, std::string_view path);

/// Four-photon double-pair source: equal superposition of both pairs in
/// the first crystal, both in the second, and one in each, i.e.
/// (|2,0;2,0> + |0,2;0,2> + |1,1;1,1>)/sqrt3 over (a.H,a.V;b.H,b.V).
/// Path a is rotated H->D, V->A, path b is rotated H->L, V->R, the paths
/// meet a balanced beam splitter, and no photon is conditioned on path b.
/// With a pnr detector the conditional probability is 1/3 and the output
/// is the 4004/2-2 superposition with fidelity 3/4 to the ideal 4004.
CircuitResult spdc_noonlike(const DetectorModel& detector = DetectorModel::pnr());

/// Reference circuit scripts equivalent to the named builders.
namespace scripts {
extern const std::string_view kHomDA;
extern const std::string_view kHomLR;
extern const std::string_view kNoon4;        // balanced, pnr heralding
extern const std::string_view kNoon4Eta066;  // balanced, on-off eta = 0.66
extern const std::string_view kNoon8;
}  // namespace scripts

}  // namespace noonsim
