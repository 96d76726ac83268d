#pragma once

#include <string>
#include <vector>

#include "isoq/curves.hpp"

namespace isoq {

// Accepts inline JSON, a path to a JSON file, or the bare names "cycle" and "exceptional1".
CurveModel load_descriptor(const std::string& text, std::vector<std::string>* warnings = nullptr);
// Canonical JSON text; synthesized curves have no descriptor (Validation error).
std::string descriptor_of(const CurveModel& model);

cplx parse_complex(const std::string& s);
std::string format_double(double x);
std::string format_complex(cplx z);

}  // namespace isoq
