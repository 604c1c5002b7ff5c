#include "cli_support.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "noonsim/script.hpp"

namespace noonsim::cli {

using nlohmann::json;

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    char buffer[40];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                   std::chars_format::general, 12);
    return std::string(buffer, ptr);
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t colon = text.find(':', start);
        parts.push_back(text.substr(start, colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    std::vector<double> values;
    for (const auto& part : parts) {
        auto value = parse_number(part);
        if (!value) throw std::invalid_argument("bad grid component '" + part + "'");
        values.push_back(*value);
    }
    if (values.size() == 1) return values;
    if (values.size() != 3) {
        throw std::invalid_argument("grid must be a number or start:end:step");
    }
    double lo = values[0], hi = values[1], step = values[2];
    if (step <= 0.0 || hi < lo) throw std::invalid_argument("grid needs step > 0 and end >= start");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        double v = lo + i * step;  // no drift accumulation
        if (v > hi + step / 2) break;
        grid.push_back(std::min(v, hi));
    }
    return grid;
}

// ---- tables -----------------------------------------------------------------

std::vector<SubtractRow> subtract_table(int n, double t2, const std::vector<double>& etas) {
    StateEnsemble input(noon_state("a", n, +1));
    PureState target = noon_state("a", n - 1, +1);
    double t = std::sqrt(t2);
    std::vector<SubtractRow> rows;
    rows.reserve(etas.size());
    for (double eta : etas) {
        CircuitResult result = subtract_photon(input, "a", t, eta);
        rows.push_back({n, eta, t2, fidelity_to_pure(result.output, target),
                        result.success_prob});
    }
    return rows;
}

std::vector<Fig2Row> fig2_table(const std::vector<double>& etas, double t2) {
    std::vector<Fig2Row> rows;
    for (int n = 2; n <= 8; ++n) {
        for (const auto& row : subtract_table(n, t2, etas)) {
            rows.push_back({row.n, row.eta, row.t2, row.fidelity});
        }
    }
    return rows;
}

std::vector<Fig4Row> fig4_table(const std::vector<double>& etas) {
    std::vector<Fig4Row> rows;
    rows.reserve(etas.size());
    for (double eta : etas) {
        rows.push_back({eta, sensitivity_bound(eta), fidelity_formula(eta), 0.5});
    }
    return rows;
}

ThresholdRow threshold_row(double target) {
    double eta = threshold_efficiency(target);
    return {target, eta, fidelity_formula(eta)};
}

// ---- emitters ---------------------------------------------------------------

namespace {

std::string occupation_string(const OccupationVector& occ) {
    std::string text;
    for (std::size_t i = 0; i < occ.size(); ++i) {
        if (i) text += ' ';
        text += std::to_string(occ[i]);
    }
    return text;
}

std::string register_string(const Register& reg) {
    std::string text;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (i) text += ' ';
        text += to_string(reg.mode(i));
    }
    return text;
}

json circuit_json(const CircuitResult& result) {
    json steps = json::array();
    for (const auto& step : result.steps) {
        steps.push_back({{"label", step.label}, {"probability", step.probability}});
    }
    json reg = json::array();
    for (const auto& mode : result.output.reg().modes()) reg.push_back(to_string(mode));
    json branches = json::array();
    for (const auto& branch : result.output.branches()) {
        json amps = json::array();
        for (const auto& [occ, amp] : branch.state.amplitudes()) {
            amps.push_back({{"occupation", occ.counts()}, {"re", amp.real()},
                            {"im", amp.imag()}});
        }
        branches.push_back({{"weight", branch.weight}, {"amplitudes", amps}});
    }
    return json{{"success_prob", result.success_prob},
                {"steps", steps},
                {"register", reg},
                {"branches", branches}};
}

template <typename RowRange, typename Header, typename RowFn>
void emit_csv_table(std::ostream& out, const Header& header, const RowRange& rows, RowFn field) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            out << (i ? "," : "") << field(row, i);
        }
        out << '\n';
    }
}

}  // namespace

void emit_circuit_result(const CircuitResult& result, Format format, std::ostream& out) {
    if (format == Format::json) {
        out << circuit_json(result).dump(2) << '\n';
        return;
    }
    out << "record,name,occupation,re,im\n";
    out << "register,," << register_string(result.output.reg()) << ",,\n";
    out << "success_prob,,," << format_double(result.success_prob) << ",0\n";
    for (const auto& step : result.steps) {
        out << "step_prob," << step.label << ",," << format_double(step.probability) << ",0\n";
    }
    for (std::size_t b = 0; b < result.output.branch_count(); ++b) {
        const auto& branch = result.output.branches()[b];
        out << "branch_weight," << b << ",," << format_double(branch.weight) << ",0\n";
        for (const auto& [occ, amp] : branch.state.amplitudes()) {
            out << "amplitude," << b << ',' << occupation_string(occ) << ','
                << format_double(amp.real()) << ',' << format_double(amp.imag()) << '\n';
        }
    }
}

void emit_metrology(const std::vector<MetrologyResult>& rows, Format format, std::ostream& out) {
    if (format == Format::json) {
        json array = json::array();
        for (const auto& row : rows) {
            array.push_back({{"eta", row.eta},
                             {"phi", row.phi},
                             {"parity", row.parity},
                             {"delta_phi_numeric", row.delta_phi_numeric},
                             {"delta_phi_closed", row.delta_phi_closed},
                             {"fidelity", row.fidelity}});
        }
        out << json{{"rows", array}}.dump(2) << '\n';
        return;
    }
    const std::vector<std::string> header{"eta",       "phi",
                                          "parity",    "delta_phi_numeric",
                                          "delta_phi_closed", "fidelity"};
    emit_csv_table(out, header, rows, [](const MetrologyResult& row, std::size_t i) {
        switch (i) {
            case 0: return format_double(row.eta);
            case 1: return format_double(row.phi);
            case 2: return format_double(row.parity);
            case 3: return format_double(row.delta_phi_numeric);
            case 4: return format_double(row.delta_phi_closed);
            default: return format_double(row.fidelity);
        }
    });
}

void emit_subtract(const std::vector<SubtractRow>& rows, Format format, std::ostream& out) {
    if (format == Format::json) {
        json array = json::array();
        for (const auto& row : rows) {
            array.push_back({{"n", row.n},
                             {"eta", row.eta},
                             {"t2", row.t2},
                             {"fidelity", row.fidelity},
                             {"click_prob", row.click_prob}});
        }
        out << json{{"rows", array}}.dump(2) << '\n';
        return;
    }
    const std::vector<std::string> header{"n", "eta", "t2", "fidelity", "click_prob"};
    emit_csv_table(out, header, rows, [](const SubtractRow& row, std::size_t i) {
        switch (i) {
            case 0: return std::to_string(row.n);
            case 1: return format_double(row.eta);
            case 2: return format_double(row.t2);
            case 3: return format_double(row.fidelity);
            default: return format_double(row.click_prob);
        }
    });
}

void emit_fig2(const std::vector<Fig2Row>& rows, Format format, std::ostream& out) {
    if (format == Format::json) {
        json array = json::array();
        for (const auto& row : rows) {
            array.push_back(
                {{"n", row.n}, {"eta", row.eta}, {"t2", row.t2}, {"fidelity", row.fidelity}});
        }
        out << json{{"rows", array}}.dump(2) << '\n';
        return;
    }
    const std::vector<std::string> header{"n", "eta", "t2", "fidelity"};
    emit_csv_table(out, header, rows, [](const Fig2Row& row, std::size_t i) {
        switch (i) {
            case 0: return std::to_string(row.n);
            case 1: return format_double(row.eta);
            case 2: return format_double(row.t2);
            default: return format_double(row.fidelity);
        }
    });
}

void emit_fig4(const std::vector<Fig4Row>& rows, Format format, std::ostream& out) {
    if (format == Format::json) {
        json array = json::array();
        for (const auto& row : rows) {
            array.push_back({{"eta", row.eta},
                             {"delta_phi", row.delta_phi},
                             {"fidelity", row.fidelity},
                             {"shot_noise", row.shot_noise}});
        }
        out << json{{"rows", array}}.dump(2) << '\n';
        return;
    }
    const std::vector<std::string> header{"eta", "delta_phi", "fidelity", "shot_noise"};
    emit_csv_table(out, header, rows, [](const Fig4Row& row, std::size_t i) {
        switch (i) {
            case 0: return format_double(row.eta);
            case 1: return format_double(row.delta_phi);
            case 2: return format_double(row.fidelity);
            default: return format_double(row.shot_noise);
        }
    });
}

void emit_threshold(const ThresholdRow& row, Format format, std::ostream& out) {
    if (format == Format::json) {
        out << json{{"target", row.target}, {"eta", row.eta}, {"fidelity", row.fidelity}}.dump(2)
            << '\n';
        return;
    }
    out << "target,eta,fidelity\n";
    out << format_double(row.target) << ',' << format_double(row.eta) << ','
        << format_double(row.fidelity) << '\n';
}

}  // namespace noonsim::cli
