#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "noonsim/states.hpp"

namespace noonsim {

/// A unitary substitution on creation operators: the operator of support
/// mode k maps to sum_j S(j,k) * (operator of support mode j). Modes
/// outside the support are untouched. Checked unitary on construction
/// (max-norm of S^dag S - I within 1e-10).
class ModeTransform {
public:
    ModeTransform(Register support, std::vector<Complex> row_major);

    static ModeTransform identity(const Register& support);

    const Register& support() const { return support_; }
    std::size_t dim() const { return support_.size(); }
    Complex coeff(std::size_t row, std::size_t col) const { return matrix_[row * dim() + col]; }

    /// Same transform over a larger register (identity elsewhere).
    ModeTransform embedded_in(const Register& reg) const;

private:
    Register support_;
    std::vector<Complex> matrix_;
};

/// Matrix product in application order: the first element acts first.
/// Supports are merged; throws on empty input.
ModeTransform compose(std::span<const ModeTransform> transforms);
ModeTransform compose(std::initializer_list<ModeTransform> transforms);

/// Applies the substitution to every basis monomial and re-collects Fock
/// amplitudes. Norm and total photon number are preserved. The transform's
/// support must be contained in the state's register.
PureState apply(const PureState& state, const ModeTransform& transform);
StateEnsemble apply(const StateEnsemble& ens, const ModeTransform& transform);

// ---- elements -------------------------------------------------------------

/// Two-mode mixer on a single pair of modes:
///   x -> t x + r y,   y -> t y - r x.
/// Requires t^2 + r^2 = 1 within 1e-10.
ModeTransform mode_mixer(const ModeId& x, const ModeId& y, double t, double r);

/// Path beam splitter: the same (t, r) mixer on the H pair and the V pair
/// of the two paths. Convention: a -> t a + r b, b -> t b - r a.
ModeTransform beam_splitter(std::string_view path_a, std::string_view path_b, double t,
                            double r);

enum class PbsBasis { HV, DA, LR };

std::string_view to_string(PbsBasis basis);

/// Polarizing beam splitter between two paths. In the named basis the first
/// polarization transmits (keeps its path) and the second reflects (swaps
/// paths) with reflection coefficient +1; to model a device with a nontrivial
/// reflection phase, compose with explicit phase_shift elements.
ModeTransform pbs(std::string_view path_a, std::string_view path_b, PbsBasis basis);

/// Polarization rotation on one path: H -> cos(theta) H + sin(theta) V,
/// V -> -sin(theta) H + cos(theta) V.  theta = pi/4 maps H to D.
ModeTransform rotator(std::string_view path, double theta);

/// Wave plate with fast axis H: multiplies the V operator by e^{i delta}.
ModeTransform waveplate(std::string_view path, double retardance);

/// Multiplies a single mode's operator by e^{i phi}.
ModeTransform phase_shift(const ModeId& mode, double phi);

/// Basis change to circular polarizations: with sign=+1, H -> L and V -> R
/// (L = (H + iV)/sqrt2, R = (H - iV)/sqrt2); sign=-1 swaps the handedness.
ModeTransform circular_basis(std::string_view path, int sign);

}  // namespace noonsim
