#pragma once

#include <string>

#include "somnb/bayes.hpp"
#include "somnb/pipeline.hpp"
#include "somnb/som.hpp"

namespace somnb {

// Versioned JSON documents. Doubles round-trip exactly (decimal shortest
// representation); *_from_json validates the format tag and version.

std::string som_model_to_json(const SomModel& model);
SomModel som_model_from_json(const std::string& text);

std::string nb_model_to_json(const NbModel& model);
NbModel nb_model_from_json(const std::string& text);

std::string report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(const std::string& text);

/// Human-readable rendering of a report (percentages with 2 decimals).
std::string report_to_text(const EvaluationReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace somnb
