#pragma once

#include <filesystem>
#include "json.hpp"

#include "mmsalloc/reductions.hpp"
#include "mmsalloc/solve_common.hpp"

namespace mmsalloc {

using Json = nlohmann::json;

/// Integers stay numbers, other rationals become "p/q" strings.
Json to_json(const Rational& value);
Rational rational_from_json(const Json& j);

Json to_json(const Instance& instance);
Instance instance_from_json(const Json& j);

Json to_json(const Allocation& allocation);
Allocation allocation_from_json(const Json& j);

Json to_json(const ReductionStep& step);
ReductionStep step_from_json(const Json& j);
Json to_json(const ReductionTrace& trace);
ReductionTrace trace_from_json(const Json& j);

/// Status, diagnostic, allocation, trace and the certificate numbers.
Json to_json(const SolveOutcome& outcome);

/// Parse and IO failures raise MmsError with ParseError.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace mmsalloc
