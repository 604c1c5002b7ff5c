#include "noonsim/script.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

#include "noonsim/detection.hpp"

namespace noonsim {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

std::optional<double> parse_number(std::string_view token) {
    if (token.empty()) return std::nullopt;

    // [sign][k]pi[/m]
    std::string_view rest = token;
    double sign = 1.0;
    if (rest.front() == '+' || rest.front() == '-') {
        if (rest.front() == '-') sign = -1.0;
        rest.remove_prefix(1);
    }
    auto parse_uint = [](std::string_view& sv) -> std::optional<long> {
        std::size_t i = 0;
        while (i < sv.size() && sv[i] >= '0' && sv[i] <= '9') ++i;
        if (i == 0) return std::nullopt;
        long value = 0;
        std::from_chars(sv.data(), sv.data() + i, value);
        sv.remove_prefix(i);
        return value;
    };
    if (rest.find("pi") != std::string_view::npos) {
        double numerator = 1.0;
        if (auto k = parse_uint(rest)) numerator = static_cast<double>(*k);
        if (!rest.starts_with("pi")) return std::nullopt;
        rest.remove_prefix(2);
        double denominator = 1.0;
        if (!rest.empty()) {
            if (rest.front() != '/') return std::nullopt;
            rest.remove_prefix(1);
            auto m = parse_uint(rest);
            if (!m || *m == 0 || !rest.empty()) return std::nullopt;
            denominator = static_cast<double>(*m);
        }
        return sign * numerator * std::numbers::pi / denominator;
    }

    std::string_view decimal = token;
    if (decimal.front() == '+') decimal.remove_prefix(1);  // from_chars rejects '+'
    if (decimal.empty()) return std::nullopt;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(decimal.data(), decimal.data() + decimal.size(), value);
    if (ec != std::errc() || ptr != decimal.data() + decimal.size()) return std::nullopt;
    return value;
}

namespace {

struct Token {
    std::string_view text;
    int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
               line[i] != '#') {
            ++i;
        }
        tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    CircuitSpec parse() {
        CircuitSpec spec;
        std::size_t pos = 0;
        int line_no = 0;
        while (pos <= text_.size()) {
            std::size_t eol = text_.find('\n', pos);
            std::string_view line = text_.substr(
                pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
            ++line_no;
            parse_line(line, line_no, spec);
            if (eol == std::string_view::npos) break;
            pos = eol + 1;
        }
        return spec;
    }

private:
    std::string_view text_;
    std::set<std::string> declared_;   // every path name ever declared
    std::set<ModeId> live_;            // modes currently in the register
    int injected_ = 0;

    [[noreturn]] static void fail(int line, int column, const std::string& msg) {
        throw ParseError(line, column, msg);
    }

    void require_arity(const std::vector<Token>& tokens, int line, std::size_t n,
                       const char* usage) {
        if (tokens.size() != n) {
            int col = tokens.size() > n ? tokens[n].column
                                        : tokens.back().column +
                                              static_cast<int>(tokens.back().text.size());
            fail(line, col, std::string("expected: ") + usage);
        }
    }

    double number_arg(const Token& token, int line) {
        auto value = parse_number(token.text);
        if (!value) fail(line, token.column, "not a number: '" + std::string(token.text) + "'");
        return *value;
    }

    double eta_arg(const Token& token, int line) {
        double eta = number_arg(token, line);
        if (!(eta >= 0.0 && eta <= 1.0)) fail(line, token.column, "eta must be in [0, 1]");
        return eta;
    }

    std::string path_arg(const Token& token, int line, bool must_be_live = true) {
        std::string path(token.text);
        if (!declared_.contains(path)) fail(line, token.column, "undeclared path '" + path + "'");
        if (must_be_live &&
            (!live_.contains(mode_h(path)) || !live_.contains(mode_v(path)))) {
            fail(line, token.column, "path '" + path + "' is no longer fully present");
        }
        return path;
    }

    ModeId mode_arg(const Token& token, int line) {
        std::string_view text = token.text;
        auto dot = text.find('.');
        if (dot == std::string_view::npos || dot + 2 != text.size() ||
            (text[dot + 1] != 'H' && text[dot + 1] != 'V')) {
            fail(line, token.column, "expected <path>.<H|V>, got '" + std::string(text) + "'");
        }
        std::string path(text.substr(0, dot));
        if (!declared_.contains(path)) fail(line, token.column, "undeclared path '" + path + "'");
        ModeId mode{path, text[dot + 1] == 'H' ? Pol::H : Pol::V};
        if (!live_.contains(mode)) {
            fail(line, token.column, "mode " + to_string(mode) + " is no longer present");
        }
        return mode;
    }

    void remove_mode(const ModeId& mode) { live_.erase(mode); }

    void parse_line(std::string_view line, int line_no, CircuitSpec& spec) {
        std::vector<Token> tokens = tokenize(line);
        if (tokens.empty()) return;
        const std::string_view cmd = tokens[0].text;

        if (cmd == "paths") {
            if (tokens.size() < 2) fail(line_no, tokens[0].column, "expected: paths <name>...");
            step::DeclarePaths decl;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                std::string name(tokens[i].text);
                if (name.find('.') != std::string::npos) {
                    fail(line_no, tokens[i].column, "path names may not contain '.'");
                }
                if (!declared_.insert(name).second) {
                    fail(line_no, tokens[i].column, "path '" + name + "' already declared");
                }
                live_.insert(mode_h(name));
                live_.insert(mode_v(name));
                decl.paths.push_back(std::move(name));
            }
            if (live_.size() > Register::kMaxModes) {
                fail(line_no, tokens[1].column,
                     "mode cap (" + std::to_string(Register::kMaxModes) + ") exceeded");
            }
            spec.steps.push_back({std::move(decl), line_no});
        } else if (cmd == "photon") {
            require_arity(tokens, line_no, 3, "photon <path> <H|V|D|A|L|R>");
            std::string path = path_arg(tokens[1], line_no);
            PolState pol;
            std::string_view p = tokens[2].text;
            if (p == "H") pol = PolState::H;
            else if (p == "V") pol = PolState::V;
            else if (p == "D") pol = PolState::D;
            else if (p == "A") pol = PolState::A;
            else if (p == "L") pol = PolState::L;
            else if (p == "R") pol = PolState::R;
            else fail(line_no, tokens[2].column, "polarization must be one of H V D A L R");
            if (++injected_ > PureState::kMaxPhotons) {
                fail(line_no, tokens[0].column,
                     "photon cap (" + std::to_string(PureState::kMaxPhotons) + ") exceeded");
            }
            spec.steps.push_back({step::Inject{std::move(path), pol}, line_no});
        } else if (cmd == "bs") {
            require_arity(tokens, line_no, 5, "bs <p1> <p2> <t> <r>");
            std::string a = path_arg(tokens[1], line_no);
            std::string b = path_arg(tokens[2], line_no);
            if (a == b) fail(line_no, tokens[2].column, "beam splitter paths must differ");
            double t = number_arg(tokens[3], line_no);
            double r = number_arg(tokens[4], line_no);
            if (std::abs(t * t + r * r - 1.0) > 1e-10) {
                fail(line_no, tokens[3].column, "t^2 + r^2 must equal 1");
            }
            spec.steps.push_back({step::BeamSplitter{std::move(a), std::move(b), t, r}, line_no});
        } else if (cmd == "pbs") {
            require_arity(tokens, line_no, 4, "pbs <p1> <p2> <HV|DA|LR>");
            std::string a = path_arg(tokens[1], line_no);
            std::string b = path_arg(tokens[2], line_no);
            if (a == b) fail(line_no, tokens[2].column, "pbs paths must differ");
            PbsBasis basis;
            std::string_view bs = tokens[3].text;
            if (bs == "HV") basis = PbsBasis::HV;
            else if (bs == "DA") basis = PbsBasis::DA;
            else if (bs == "LR") basis = PbsBasis::LR;
            else fail(line_no, tokens[3].column, "basis must be HV, DA or LR");
            spec.steps.push_back({step::Pbs{std::move(a), std::move(b), basis}, line_no});
        } else if (cmd == "rot") {
            require_arity(tokens, line_no, 3, "rot <path> <radians>");
            std::string path = path_arg(tokens[1], line_no);
            double theta = number_arg(tokens[2], line_no);
            spec.steps.push_back({step::Rotator{std::move(path), theta}, line_no});
        } else if (cmd == "wp") {
            require_arity(tokens, line_no, 3, "wp <path> <radians>");
            std::string path = path_arg(tokens[1], line_no);
            double delta = number_arg(tokens[2], line_no);
            spec.steps.push_back({step::Waveplate{std::move(path), delta}, line_no});
        } else if (cmd == "phase") {
            require_arity(tokens, line_no, 3, "phase <path>.<H|V> <radians>");
            ModeId mode = mode_arg(tokens[1], line_no);
            double phi = number_arg(tokens[2], line_no);
            spec.steps.push_back({step::Phase{std::move(mode), phi}, line_no});
        } else if (cmd == "herald_none") {
            if (tokens.size() != 2 && tokens.size() != 3) {
                fail(line_no, tokens[0].column, "expected: herald_none <path> [eta]");
            }
            std::string path(tokens[1].text);
            if (!declared_.contains(path)) {
                fail(line_no, tokens[1].column, "undeclared path '" + path + "'");
            }
            bool any_live = live_.contains(mode_h(path)) || live_.contains(mode_v(path));
            if (!any_live) {
                fail(line_no, tokens[1].column, "path '" + path + "' has no modes left");
            }
            std::optional<double> eta;
            if (tokens.size() == 3) eta = eta_arg(tokens[2], line_no);
            remove_mode(mode_h(path));
            remove_mode(mode_v(path));
            spec.steps.push_back({step::HeraldNone{std::move(path), eta}, line_no});
        } else if (cmd == "herald_click") {
            require_arity(tokens, line_no, 3, "herald_click <path>.<H|V> <eta>");
            ModeId mode = mode_arg(tokens[1], line_no);
            double eta = eta_arg(tokens[2], line_no);
            remove_mode(mode);
            spec.steps.push_back({step::HeraldClick{std::move(mode), eta}, line_no});
        } else if (cmd == "pnr") {
            require_arity(tokens, line_no, 3, "pnr <path>.<H|V> <n>");
            ModeId mode = mode_arg(tokens[1], line_no);
            auto value = parse_number(tokens[2].text);
            int n = value ? static_cast<int>(*value) : -1;
            if (!value || *value != n || n < 0 || n > PureState::kMaxPhotons) {
                fail(line_no, tokens[2].column, "photon count must be an integer in [0, 16]");
            }
            remove_mode(mode);
            spec.steps.push_back({step::ProjectPnr{std::move(mode), n}, line_no});
        } else {
            fail(line_no, tokens[0].column, "unknown command '" + std::string(cmd) + "'");
        }
    }
};

StateEnsemble reprune(const StateEnsemble& ens, double threshold) {
    if (threshold <= PureState::kPruneThreshold) return ens;
    std::vector<StateEnsemble::Branch> branches;
    for (const auto& branch : ens.branches()) {
        branches.push_back(
            {branch.weight,
             PureState(branch.state.reg(), branch.state.amplitudes(), threshold)});
    }
    return StateEnsemble(std::move(branches));
}

}  // namespace

CircuitSpec parse_circuit(std::string_view text) { return Parser(text).parse(); }

namespace {

struct Runner {
    CircuitResult result;
    StateEnsemble state = StateEnsemble(PureState());
    int line = 0;

    void transform(const ModeTransform& tr) { state = apply(state, tr); }

    void condition(const std::string& label, Conditioned conditioned) {
        double before = state.trace();
        double step = before > 0.0 ? conditioned.probability / before : 0.0;
        result.steps.push_back({label, step});
        result.success_prob *= step;
        state = std::move(conditioned.ensemble);
    }

    void operator()(const step::DeclarePaths& s) {
        Register fresh = Register::of_paths(s.paths);
        std::vector<StateEnsemble::Branch> branches;
        for (const auto& branch : state.branches()) {
            branches.push_back({branch.weight, tensor(branch.state, PureState::vacuum(fresh))});
        }
        state = StateEnsemble(std::move(branches));
    }

    void operator()(const step::Inject& s) {
        double before = state.trace();
        std::vector<StateEnsemble::Branch> branches;
        for (const auto& branch : state.branches()) {
            branches.push_back({branch.weight, inject_photon(branch.state, s.path, s.pol)});
        }
        state = StateEnsemble(std::move(branches));
        if (state.trace() > before * (1.0 + 1e-9)) {
            throw std::domain_error("line " + std::to_string(line) +
                                    ": photon injection into an occupied mode");
        }
    }

    void operator()(const step::BeamSplitter& s) {
        transform(beam_splitter(s.path_a, s.path_b, s.t, s.r));
    }
    void operator()(const step::Pbs& s) { transform(pbs(s.path_a, s.path_b, s.basis)); }
    void operator()(const step::Rotator& s) { transform(rotator(s.path, s.theta)); }
    void operator()(const step::Waveplate& s) { transform(waveplate(s.path, s.retardance)); }
    void operator()(const step::Phase& s) { transform(phase_shift(s.mode, s.phi)); }

    void operator()(const step::HeraldNone& s) {
        std::vector<ModeId> modes = state.reg().modes_of_path(s.path);
        std::string label = "herald_none " + s.path;
        if (s.eta) {
            condition(label + " (eta=" + std::to_string(*s.eta) + ")",
                      condition_no_click(state, modes, *s.eta));
        } else {
            condition(label + " (pnr)", project_pnr(state, modes, 0));
        }
    }

    void operator()(const step::HeraldClick& s) {
        condition("herald_click " + to_string(s.mode) + " (eta=" + std::to_string(s.eta) + ")",
                  condition_click(state, {s.mode}, s.eta));
    }

    void operator()(const step::ProjectPnr& s) {
        condition("pnr " + to_string(s.mode) + " n=" + std::to_string(s.n),
                  project_pnr(state, {s.mode}, s.n));
    }
};

}  // namespace

CircuitResult run_circuit(const CircuitSpec& spec, const RunOptions& options) {
    Runner runner;
    for (const auto& entry : spec.steps) {
        runner.line = entry.line;
        std::visit(runner, entry.op);
        runner.state = reprune(runner.state, options.prune_threshold);
    }
    runner.result.output = std::move(runner.state);
    return runner.result;
}

}  // namespace noonsim
