#include "noonsim/transforms.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace noonsim {

namespace {

constexpr double kUnitaryTol = 1e-10;

// exact in double up to 18!
const std::array<double, PureState::kMaxPhotons + 1>& factorials() {
    static const auto table = [] {
        std::array<double, PureState::kMaxPhotons + 1> f{};
        f[0] = 1.0;
        for (std::size_t n = 1; n < f.size(); ++n) f[n] = f[n - 1] * static_cast<double>(n);
        return f;
    }();
    return table;
}

void check_unitary(const Register& support, const std::vector<Complex>& m) {
    const std::size_t d = support.size();
    if (m.size() != d * d) {
        throw std::invalid_argument("transform: matrix size does not match support");
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            Complex dot{};
            for (std::size_t k = 0; k < d; ++k) {
                dot += std::conj(m[k * d + i]) * m[k * d + j];
            }
            Complex expected = (i == j) ? Complex{1.0, 0.0} : Complex{};
            if (std::abs(dot - expected) > kUnitaryTol) {
                throw std::invalid_argument("transform: matrix is not unitary");
            }
        }
    }
}

}  // namespace

ModeTransform::ModeTransform(Register support, std::vector<Complex> row_major)
    : support_(std::move(support)), matrix_(std::move(row_major)) {
    check_unitary(support_, matrix_);
}

ModeTransform ModeTransform::identity(const Register& support) {
    const std::size_t d = support.size();
    std::vector<Complex> m(d * d);
    for (std::size_t i = 0; i < d; ++i) m[i * d + i] = 1.0;
    return ModeTransform(support, std::move(m));
}

ModeTransform ModeTransform::embedded_in(const Register& reg) const {
    const std::size_t d = reg.size();
    std::vector<Complex> m(d * d);
    for (std::size_t i = 0; i < d; ++i) m[i * d + i] = 1.0;
    std::vector<std::size_t> where;
    for (const auto& mode : support_.modes()) {
        auto idx = reg.index_of(mode);
        if (!idx) {
            throw std::invalid_argument("transform: support mode " + to_string(mode) +
                                        " missing from register");
        }
        where.push_back(*idx);
    }
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = 0; j < dim(); ++j) {
            m[where[i] * d + where[j]] = coeff(i, j);
        }
    }
    return ModeTransform(reg, std::move(m));
}

ModeTransform compose(std::span<const ModeTransform> transforms) {
    if (transforms.empty()) {
        throw std::invalid_argument("compose: empty transform list");
    }
    Register shared = transforms.front().support();
    for (const auto& tr : transforms.subspan(1)) {
        for (const auto& mode : tr.support().modes()) {
            if (!shared.contains(mode)) shared = shared.merged(Register({mode}));
        }
    }
    const std::size_t d = shared.size();
    std::vector<Complex> product(d * d);
    for (std::size_t i = 0; i < d; ++i) product[i * d + i] = 1.0;
    for (const auto& tr : transforms) {  // application order: left acts first
        ModeTransform embedded = tr.embedded_in(shared);
        std::vector<Complex> next(d * d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                Complex sum{};
                for (std::size_t k = 0; k < d; ++k) {
                    sum += embedded.coeff(i, k) * product[k * d + j];
                }
                next[i * d + j] = sum;
            }
        }
        product = std::move(next);
    }
    return ModeTransform(shared, std::move(product));
}

ModeTransform compose(std::initializer_list<ModeTransform> transforms) {
    return compose(std::span<const ModeTransform>(transforms.begin(), transforms.size()));
}

namespace {

// Sparse polynomial in creation-operator powers, used while expanding one
// input basis monomial.
using PowerPoly = std::map<OccupationVector, Complex>;

// repeated multiplication keeps real coefficients exactly real, unlike the
// exp/log path of std::pow(complex, double)
Complex ipow(Complex base, int exponent) {
    Complex result{1.0, 0.0};
    for (int k = 0; k < exponent; ++k) result *= base;
    return result;
}

// (sum_e coeff_e x_e)^n expanded over the listed entries, distributing the
// exponent with multinomial weights. Appends (powers per entry, coeff).
void expand_power(const std::vector<Complex>& coeffs, int n,
                  std::vector<std::pair<std::vector<int>, Complex>>& out) {
    std::vector<int> powers(coeffs.size(), 0);
    const auto& fact = factorials();
    auto recurse = [&](auto&& self, std::size_t entry, int remaining, Complex acc) -> void {
        if (entry + 1 == coeffs.size()) {
            powers[entry] = remaining;
            Complex c = acc * ipow(coeffs[entry], remaining) / fact[remaining];
            out.emplace_back(powers, c * fact[n]);
            powers[entry] = 0;
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            powers[entry] = k;
            self(self, entry + 1, remaining - k,
                 acc * ipow(coeffs[entry], k) / fact[k]);
        }
        powers[entry] = 0;
    };
    recurse(recurse, 0, n, Complex{1.0, 0.0});
}

}  // namespace

PureState apply(const PureState& state, const ModeTransform& transform) {
    const Register& reg = state.reg();
    const std::size_t d = reg.size();

    // state-register index of each support mode, and each support column's
    // image as (state index, coefficient) pairs
    std::vector<std::size_t> support_pos;
    for (const auto& mode : transform.support().modes()) {
        auto idx = reg.index_of(mode);
        if (!idx) {
            throw std::invalid_argument("apply: transform mode " + to_string(mode) +
                                        " missing from state register");
        }
        support_pos.push_back(*idx);
    }
    const std::size_t s = support_pos.size();
    std::vector<bool> in_support(d, false);
    for (std::size_t p : support_pos) in_support[p] = true;

    std::vector<std::vector<std::pair<std::size_t, Complex>>> columns(s);
    for (std::size_t col = 0; col < s; ++col) {
        for (std::size_t row = 0; row < s; ++row) {
            Complex c = transform.coeff(row, col);
            if (std::abs(c) > 0.0) columns[col].emplace_back(support_pos[row], c);
        }
    }

    const auto& fact = factorials();
    PureState::Amplitudes out;
    std::vector<std::pair<std::vector<int>, Complex>> scratch;

    for (const auto& [occ, amp] : state.amplitudes()) {
        // untouched modes pass through; support counts rebuilt by expansion
        std::vector<int> base(occ.counts());
        Complex prefactor = amp;
        for (std::size_t col = 0; col < s; ++col) {
            int n = base[support_pos[col]];
            base[support_pos[col]] = 0;
            prefactor /= std::sqrt(fact[n]);
        }

        PowerPoly poly;
        poly.emplace(OccupationVector(base), prefactor);

        for (std::size_t col = 0; col < s; ++col) {
            const int n = occ[support_pos[col]];
            if (n == 0) continue;
            std::vector<Complex> coeffs;
            coeffs.reserve(columns[col].size());
            for (const auto& [row, c] : columns[col]) coeffs.push_back(c);
            scratch.clear();
            expand_power(coeffs, n, scratch);

            PowerPoly next;
            for (const auto& [pows, pc] : poly) {
                for (const auto& [assign, ac] : scratch) {
                    std::vector<int> counts = pows.counts();
                    for (std::size_t e = 0; e < assign.size(); ++e) {
                        counts[columns[col][e].first] += assign[e];
                    }
                    next[OccupationVector(std::move(counts))] += pc * ac;
                }
            }
            poly = std::move(next);
        }

        for (const auto& [pows, c] : poly) {
            double conversion = 1.0;
            for (std::size_t p : support_pos) conversion *= fact[static_cast<std::size_t>(pows[p])];
            out[pows] += c * std::sqrt(conversion);
        }
    }
    return PureState(reg, std::move(out));
}

StateEnsemble apply(const StateEnsemble& ens, const ModeTransform& transform) {
    std::vector<StateEnsemble::Branch> branches;
    branches.reserve(ens.branch_count());
    for (const auto& branch : ens.branches()) {
        branches.push_back({branch.weight, apply(branch.state, transform)});
    }
    return StateEnsemble(std::move(branches));
}

// ---- elements -------------------------------------------------------------

ModeTransform mode_mixer(const ModeId& x, const ModeId& y, double t, double r) {
    if (x == y) throw std::invalid_argument("mode_mixer: identical modes");
    if (std::abs(t * t + r * r - 1.0) > kUnitaryTol) {
        throw std::invalid_argument("mode_mixer: t^2 + r^2 must equal 1");
    }
    Register support({x, y});
    // canonical order may swap x and y; express columns accordingly
    std::size_t ix = *support.index_of(x);
    std::size_t iy = *support.index_of(y);
    std::vector<Complex> m(4);
    m[ix * 2 + ix] = t;   // x -> t x + r y
    m[iy * 2 + ix] = r;
    m[iy * 2 + iy] = t;   // y -> t y - r x
    m[ix * 2 + iy] = -r;
    return ModeTransform(std::move(support), std::move(m));
}

ModeTransform beam_splitter(std::string_view path_a, std::string_view path_b, double t,
                            double r) {
    if (path_a == path_b) throw std::invalid_argument("beam_splitter: identical paths");
    return compose({mode_mixer(mode_h(path_a), mode_h(path_b), t, r),
                    mode_mixer(mode_v(path_a), mode_v(path_b), t, r)});
}

std::string_view to_string(PbsBasis basis) {
    switch (basis) {
        case PbsBasis::HV: return "HV";
        case PbsBasis::DA: return "DA";
        case PbsBasis::LR: return "LR";
    }
    return "?";
}

ModeTransform pbs(std::string_view path_a, std::string_view path_b, PbsBasis basis) {
    if (path_a == path_b) throw std::invalid_argument("pbs: identical paths");

    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    // columns of C are the transmitted/reflected polarizations in H/V coords
    std::array<Complex, 4> c;  // row-major 2x2, column 0 transmits
    switch (basis) {
        case PbsBasis::HV:
            c = {1.0, 0.0, 0.0, 1.0};
            break;
        case PbsBasis::DA:
            c = {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
            break;
        case PbsBasis::LR:
            c = {inv_sqrt2, inv_sqrt2, Complex{0, inv_sqrt2}, Complex{0, -inv_sqrt2}};
            break;
    }

    Register support = Register::of_paths({std::string(path_a), std::string(path_b)});
    // index pairs (path, pol) in support order
    auto idx = [&](std::string_view path, int pol) {
        return *support.index_of(pol == 0 ? mode_h(path) : mode_v(path));
    };

    // S = K P K^dag with K = I_paths (x) C and P the path action in the
    // rotated frame: rotated pol 0 keeps its path, pol 1 swaps paths.
    std::vector<Complex> m(16);
    const std::string_view paths[2] = {path_a, path_b};
    for (int pin = 0; pin < 2; ++pin) {
        for (int q = 0; q < 2; ++q) {  // input H/V component
            // decompose into rotated pols: coeff conj(C[q][x])
            for (int x = 0; x < 2; ++x) {
                Complex into_rotated = std::conj(c[q * 2 + x]);
                int pout = (x == 0) ? pin : 1 - pin;
                // back to H/V on the output path: C[row][x]
                for (int row = 0; row < 2; ++row) {
                    m[idx(paths[pout], row) * 4 + idx(paths[pin], q)] +=
                        c[row * 2 + x] * into_rotated;
                }
            }
        }
    }
    return ModeTransform(std::move(support), std::move(m));
}

ModeTransform rotator(std::string_view path, double theta) {
    Register support = Register::of_paths({std::string(path)});  // (H, V) order
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return ModeTransform(std::move(support), {Complex{c}, Complex{-s}, Complex{s}, Complex{c}});
}

ModeTransform waveplate(std::string_view path, double retardance) {
    Register support = Register::of_paths({std::string(path)});
    return ModeTransform(std::move(support),
                         {Complex{1.0}, Complex{}, Complex{}, std::polar(1.0, retardance)});
}

ModeTransform phase_shift(const ModeId& mode, double phi) {
    return ModeTransform(Register({mode}), {std::polar(1.0, phi)});
}

ModeTransform circular_basis(std::string_view path, int sign) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("circular_basis: sign must be +1 or -1");
    }
    Register support = Register::of_paths({std::string(path)});
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const Complex is{0.0, sign * inv_sqrt2};
    // columns: H -> (H + sign i V)/sqrt2, V -> (H - sign i V)/sqrt2
    return ModeTransform(std::move(support), {Complex{inv_sqrt2}, Complex{inv_sqrt2}, is, -is});
}

}  // namespace noonsim
