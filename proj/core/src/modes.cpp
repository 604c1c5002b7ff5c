#include "noonsim/modes.hpp"

#include <algorithm>
#include <stdexcept>

namespace noonsim {

std::string_view to_string(Pol pol) { return pol == Pol::H ? "H" : "V"; }

ModeId mode_h(std::string_view path) { return ModeId{std::string(path), Pol::H}; }
ModeId mode_v(std::string_view path) { return ModeId{std::string(path), Pol::V}; }

std::string to_string(const ModeId& mode) {
    return mode.path + "." + std::string(to_string(mode.pol));
}

namespace {
const std::shared_ptr<const std::vector<ModeId>>& empty_modes() {
    static const auto instance = std::make_shared<const std::vector<ModeId>>();
    return instance;
}
}  // namespace

Register::Register() : modes_(empty_modes()) {}

Register::Register(std::vector<ModeId> modes) {
    std::sort(modes.begin(), modes.end());
    if (std::adjacent_find(modes.begin(), modes.end()) != modes.end()) {
        throw std::invalid_argument("register: duplicate mode");
    }
    if (modes.size() > kMaxModes) {
        throw std::invalid_argument("register: mode cap (" + std::to_string(kMaxModes) +
                                    ") exceeded");
    }
    modes_ = std::make_shared<const std::vector<ModeId>>(std::move(modes));
}

Register Register::of_paths(const std::vector<std::string>& paths) {
    std::vector<ModeId> modes;
    modes.reserve(paths.size() * 2);
    for (const auto& path : paths) {
        modes.push_back(mode_h(path));
        modes.push_back(mode_v(path));
    }
    return Register(std::move(modes));
}

std::optional<std::size_t> Register::index_of(const ModeId& mode) const {
    auto it = std::lower_bound(modes_->begin(), modes_->end(), mode);
    if (it == modes_->end() || *it != mode) return std::nullopt;
    return static_cast<std::size_t>(it - modes_->begin());
}

bool Register::contains(const ModeId& mode) const { return index_of(mode).has_value(); }

bool Register::disjoint_with(const Register& other) const {
    for (const auto& mode : other.modes()) {
        if (contains(mode)) return false;
    }
    return true;
}

Register Register::merged(const Register& other) const {
    if (!disjoint_with(other)) {
        throw std::invalid_argument("register: merging overlapping registers");
    }
    std::vector<ModeId> merged = *modes_;
    merged.insert(merged.end(), other.modes().begin(), other.modes().end());
    return Register(std::move(merged));
}

Register Register::without(const std::vector<ModeId>& removed) const {
    std::vector<ModeId> kept = *modes_;
    for (const auto& mode : removed) {
        auto it = std::find(kept.begin(), kept.end(), mode);
        if (it == kept.end()) {
            throw std::invalid_argument("register: removing absent mode " + to_string(mode));
        }
        kept.erase(it);
    }
    return Register(std::move(kept));
}

std::vector<ModeId> Register::modes_of_path(std::string_view path) const {
    std::vector<ModeId> result;
    for (const auto& mode : *modes_) {
        if (mode.path == path) result.push_back(mode);
    }
    return result;
}

}  // namespace noonsim
