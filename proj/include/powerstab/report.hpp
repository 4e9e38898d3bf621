#pragma once

#include <string>
#include <string_view>

#include "powerstab/stability.hpp"

namespace powerstab {

enum class OutputFormat { Text, Json };

OutputFormat parse_format(std::string_view text);

/// Deterministic rendering. JSON fields: ideal, ring, generators, bound,
/// verdict, records, witness, certificates and, when certified, certificate.
std::string emit_report(const StabilityReport& report, OutputFormat format);

/// Inverse of the JSON rendering. Throws ParseError on malformed documents.
StabilityReport parse_report_json(std::string_view document);

/// Same ring, generators, bound, verdict, records, witness and certificates.
bool reports_equivalent(const StabilityReport& a, const StabilityReport& b);

/// One-line summary, e.g. "stable up to t=5 (not certified for all t)".
std::string verdict_summary(const StabilityReport& report);

std::string emit_criterion(const GradedCriterionReport& report, OutputFormat format);

}  // namespace powerstab
