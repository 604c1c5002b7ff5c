#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace noonsim {

/// Basis polarizations. D/A/L/R are superpositions and never appear as
/// stored mode labels; see PolState in circuits.hpp for injection states.
enum class Pol : std::uint8_t { H = 0, V = 1 };

std::string_view to_string(Pol pol);

/// One optical mode: a spatial path label plus a basis polarization.
/// Ordering is lexicographic by path, then H before V; this is the
/// canonical register order everywhere.
struct ModeId {
    std::string path;
    Pol pol = Pol::H;

    auto operator<=>(const ModeId&) const = default;
};

ModeId mode_h(std::string_view path);
ModeId mode_v(std::string_view path);
std::string to_string(const ModeId& mode);

/// An immutable, canonically ordered list of distinct modes.
/// Cheap to copy; at most kMaxModes modes.
class Register {
public:
    static constexpr std::size_t kMaxModes = 12;

    Register();
    /// Sorts into canonical order. Throws std::invalid_argument on
    /// duplicates or if the mode cap is exceeded.
    explicit Register(std::vector<ModeId> modes);

    /// Both polarizations of each listed path.
    static Register of_paths(const std::vector<std::string>& paths);

    std::size_t size() const { return modes_->size(); }
    bool empty() const { return modes_->empty(); }
    const std::vector<ModeId>& modes() const { return *modes_; }
    const ModeId& mode(std::size_t i) const { return (*modes_)[i]; }

    std::optional<std::size_t> index_of(const ModeId& mode) const;
    bool contains(const ModeId& mode) const;
    bool disjoint_with(const Register& other) const;

    /// Canonical union; throws on overlapping modes or cap overflow.
    Register merged(const Register& other) const;
    /// Register with the given modes removed; throws if any is absent.
    Register without(const std::vector<ModeId>& removed) const;

    /// All modes whose path equals `path` (possibly empty).
    std::vector<ModeId> modes_of_path(std::string_view path) const;

    bool operator==(const Register& other) const { return *modes_ == *other.modes_; }

private:
    std::shared_ptr<const std::vector<ModeId>> modes_;
};

}  // namespace noonsim
