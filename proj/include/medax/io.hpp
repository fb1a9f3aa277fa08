#pragma once

#include <string>

#include "medax/harness.hpp"

namespace medax {

// All floating-point serialization uses 17 significant digits.
std::string format_double(double v);

Shape shape_from_json_text(const std::string& text);
std::string shape_to_json_text(const Shape& shape);

ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig config_from_file(const std::string& path);
std::string config_to_json_text(const ExperimentConfig& config);

// FNV-1a over the canonical config serialization.
std::string config_hash(const ExperimentConfig& config);

std::string samples_csv(std::span<const PairSample> pairs);
std::string cloud_csv(const MedialCloud& cloud);
std::string ranges_csv(std::span<const ProjectionRange> ranges);
std::string run_record_json(const RunRecord& record, const ExperimentConfig& config);
std::string sweep_report_json(const SweepReport& report, const ExperimentConfig& config);
std::string scaling_report_json(const ScalingReport& report, const ExperimentConfig& config);
std::string unbounded_report_json(const UnboundedReport& report);
std::string oracle_compare_json(const OracleCompareReport& report);
std::string bound_report_json(const BoundReport& report);

// Shape in black, cloud centres in green, witnesses in gray; optional second
// cloud in blue.
std::string render_svg(const Shape& shape, const MedialCloud& primary, const MedialCloud* secondary);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace medax
