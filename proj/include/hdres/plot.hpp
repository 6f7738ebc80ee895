#pragma once

// Minimal deterministic SVG charts of aggregated trial records: the chosen
// metric is averaged over trials at each x value, one polyline per group.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hdres/bench.hpp"

namespace hdres {

// Numeric record fields addressable as plot axes: trial, D, F, n, M, beta,
// sigma, k, accuracy, iterations, converged, success (flags as 0/1).
double record_field(const TrialRecord& r, const std::string& field);

// Grouping fields additionally allow the string-valued rule / kind /
// experiment columns.
std::string record_group_value(const TrialRecord& r, const std::string& field);

void emit_plot(std::span<const TrialRecord> records, const std::string& x_field,
               const std::string& y_field, std::span<const std::string> group_fields,
               const std::filesystem::path& path);

}  // namespace hdres
