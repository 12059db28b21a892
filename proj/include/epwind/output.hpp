#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "epwind/analysis.hpp"
#include "epwind/holonomy.hpp"

namespace epwind {

/// Rounds to 12 significant digits; -0 becomes 0.
double round12(double x);

nlohmann::json complex_json(Complex z);
nlohmann::json permutation_json(const Permutation& p);

nlohmann::json degeneracies_json(const AnalysisResult& a);
nlohmann::json branch_lines_json(const AnalysisResult& a);
nlohmann::json holonomy_json(const std::vector<HolonomyReport>& reports, const std::vector<std::size_t>& loop_indices);

/// Two-space indented, sorted keys, trailing newline.
std::string dump(const nlohmann::json& j);

/// Header j,k,z_re,z_im,slot1_re,slot1_im,...; one row per node, k outer.
void write_grid_csv(std::ostream& out, const SheetGrid& grid);

/// Writes text to path, throwing ConfigError if the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace epwind
