#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "noonsim/circuits.hpp"

namespace noonsim {

/// Syntax or validation error in a circuit script, with 1-based position.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message);

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

namespace step {

struct DeclarePaths {
    std::vector<std::string> paths;
};
struct Inject {
    std::string path;
    PolState pol;
};
struct BeamSplitter {
    std::string path_a, path_b;
    double t, r;
};
struct Pbs {
    std::string path_a, path_b;
    PbsBasis basis;
};
struct Rotator {
    std::string path;
    double theta;
};
struct Waveplate {
    std::string path;
    double retardance;
};
struct Phase {
    ModeId mode;
    double phi;
};
struct HeraldNone {
    std::string path;
    std::optional<double> eta;  // absent = pnr projection onto 0
};
struct HeraldClick {
    ModeId mode;
    double eta;
};
struct ProjectPnr {
    ModeId mode;
    int n;
};

using Any = std::variant<DeclarePaths, Inject, BeamSplitter, Pbs, Rotator, Waveplate, Phase,
                         HeraldNone, HeraldClick, ProjectPnr>;

}  // namespace step

/// A validated, totally ordered circuit description.
struct CircuitSpec {
    struct Entry {
        step::Any op;
        int line = 0;
    };
    std::vector<Entry> steps;
};

/// Parses the line-oriented circuit format:
///   paths a b ...
///   photon <path> <H|V|D|A|L|R>
///   bs <p1> <p2> <t> <r>
///   pbs <p1> <p2> <HV|DA|LR>
///   rot <path> <radians>
///   wp <path> <radians>
///   phase <path>.<H|V> <radians>
///   herald_none <path> [eta]
///   herald_click <path>.<H|V> <eta>
///   pnr <path>.<H|V> <n>
/// `#` starts a comment. Numbers are decimals or fractions of pi such as
/// pi/4, -pi, 3pi/8. Path declarations may be repeated to introduce fresh
/// paths later; names are unique per script. All referenced modes must be
/// declared and still present, parameters must be in range, and the
/// photon/mode caps are enforced. Throws ParseError with line/column.
CircuitSpec parse_circuit(std::string_view text);

struct RunOptions {
    double prune_threshold = PureState::kPruneThreshold;
};

/// Executes the steps in order from vacuum, logging each conditioning
/// step's conditional probability. Throws ParseError (with the offending
/// line) for state-dependent failures such as injecting into an already
/// occupied mode.
CircuitResult run_circuit(const CircuitSpec& spec, const RunOptions& options = {});

/// Token -> value for the numeric grammar shared by scripts and CLI grids:
/// plain decimal, or [sign][k]pi[/m]. Returns nullopt if not a number.
std::optional<double> parse_number(std::string_view token);

}  // namespace noonsim
