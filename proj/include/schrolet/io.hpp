#pragma once
#include <string>

#include <json.hpp>

#include "schrolet/continuous.hpp"
#include "schrolet/frame.hpp"

namespace schrolet {

using json = nlohmann::json;

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

/// Columns: omega, re, im.
std::string radial_csv(const RadialFunction& f);
/// Rows must sit on the grid nodes (relative tolerance 1e-12), in order.
RadialFunction read_radial_csv(const std::string& path, const RadialGrid& grid);

/// Columns: label, m, omega, re, im; zero rows are skipped.
std::string sequence_csv(const SequenceSignal& f);
SequenceSignal read_sequence_csv(const std::string& path, const SequenceSignal& shape);

/// Raw little-endian (re, im) doubles in row-major order, plus a JSON sidecar with d, N, Xi.
void write_cartesian(const std::string& stem, const CartesianSignal& f);
CartesianSignal read_cartesian(const std::string& stem);

/// Columns: j, k, l, re, im, abs2 in lexicographic (j, k, l) order.
std::string coefficients_csv(const CoefficientTable& c);
json coefficients_meta(const CoefficientTable& c);
CoefficientTable read_coefficients(const std::string& csv_path, const std::string& meta_path);

json to_json(const ConditionReport& r);
json to_json(const ParsevalReport& r);
json to_json(const ReproducingReport& r);
json to_json(const RefinementReport& r);
json to_json(const WeilReport& r);
json to_json(const FiniteSubgroup& F);  // character table
json to_json(const Generator& g);       // slot summary

std::string fmt(double x);  // shortest round-trip decimal

}  // namespace schrolet
