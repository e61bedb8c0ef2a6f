#pragma once

// File formats: state JSON, Lagrangian and Eulerian snapshot CSVs with JSON
// sidecars. Doubles are written in shortest round-trip form.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "hsx/banach.hpp"
#include "hsx/measure.hpp"
#include "hsx/state.hpp"

namespace hsx {

std::string format_double(double v);

nlohmann::json to_json(const EulerianState& s);
/// Throws ParseError naming the offending field.
EulerianState eulerian_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Grid& g);
nlohmann::json to_json(const Tails& t);
nlohmann::json to_json(const RadonMeasure& mu);

/// Text of the `xi,y,U,H` snapshot.
std::string lagrangian_csv(const LagrangianState& x);
/// Text of the `x,u` snapshot (one row per velocity knot).
std::string eulerian_csv(const EulerianState& s);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// `<stem>.csv` plus `<stem>.tails.json`.
void write_lagrangian(const std::filesystem::path& dir, const std::string& stem, const LagrangianState& x);
/// `<stem>.csv` plus `<stem>.measure.json`.
void write_eulerian(const std::filesystem::path& dir, const std::string& stem, const EulerianState& s);

/// Inverse of write_lagrangian.
LagrangianState read_lagrangian(const std::filesystem::path& dir, const std::string& stem);

}  // namespace hsx
