#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "noonsim/circuits.hpp"
#include "noonsim/metrology.hpp"

namespace noonsim::cli {

enum class Format { csv, json };

/// 12 significant digits, locale-independent; "nan" for NaN.
std::string format_double(double value);

/// "start:end:step" (endpoints inclusive within half a step) or a single
/// number; components follow the script number grammar (pi fractions OK).
/// Throws std::invalid_argument on malformed input.
std::vector<double> parse_grid(const std::string& text);

// ---- tables -----------------------------------------------------------------

struct SubtractRow {
    int n = 0;
    double eta = 0.0;
    double t2 = 0.0;
    double fidelity = 0.0;
    double click_prob = 0.0;
};

struct Fig2Row {
    int n = 0;
    double eta = 0.0;
    double t2 = 0.0;
    double fidelity = 0.0;
};

struct Fig4Row {
    double eta = 0.0;
    double delta_phi = 0.0;
    double fidelity = 0.0;
    double shot_noise = 0.5;
};

struct ThresholdRow {
    double target = 0.5;
    double eta = 0.0;
    double fidelity = 0.0;
};

/// Fidelity of tapped subtraction on the ideal plus NOON_n, per eta.
std::vector<SubtractRow> subtract_table(int n, double t2, const std::vector<double>& etas);
std::vector<Fig2Row> fig2_table(const std::vector<double>& etas, double t2);
std::vector<Fig4Row> fig4_table(const std::vector<double>& etas);
ThresholdRow threshold_row(double target);

// ---- emitters ---------------------------------------------------------------

void emit_circuit_result(const CircuitResult& result, Format format, std::ostream& out);
void emit_metrology(const std::vector<MetrologyResult>& rows, Format format, std::ostream& out);
void emit_subtract(const std::vector<SubtractRow>& rows, Format format, std::ostream& out);
void emit_fig2(const std::vector<Fig2Row>& rows, Format format, std::ostream& out);
void emit_fig4(const std::vector<Fig4Row>& rows, Format format, std::ostream& out);
void emit_threshold(const ThresholdRow& row, Format format, std::ostream& out);

}  // namespace noonsim::cli
