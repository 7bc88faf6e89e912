// figures.hpp — Built-in experiment recipes producing the figure data bundles

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spinchannel/expcli/csv.hpp"
#include "spinchannel/expcli/runner.hpp"

namespace spinchannel::expcli {

struct Panel {
    std::string file; // e.g. "fig1a.csv"
    Table table;
};

// fig1, fig2, ..., fig6.
const std::vector<std::string>& figure_names();

// Data for one figure, one table per panel or inset. options.lambda and
// options.gamma replace the recipe's λ = 1 and fixed γ (the γ series of fig5
// collapses to the single override). Throws ArgumentError for an unknown name.
std::vector<Panel> figure(const std::string& name, const RunOptions& options);

// Runs `figure` and writes each panel under `dir`; returns the written paths.
std::vector<std::filesystem::path> write_figure(const std::string& name, const RunOptions& options,
                                                const std::filesystem::path& dir);

} // namespace spinchannel::expcli
