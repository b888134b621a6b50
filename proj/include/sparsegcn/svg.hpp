#pragma once

#include <filesystem>
#include <span>

#include "sparsegcn/experiment.hpp"

namespace sparsegcn {

/// Standalone SVG in the sweep-figure layout: mean relative error vs n on a
/// log2 x-axis, +-1 sd error bars, one curve per group (per N when several N
/// values are present, otherwise per degree).
void emit_plot(std::span<const SweepSummary> summaries,
               const std::filesystem::path& path);

}  // namespace sparsegcn
