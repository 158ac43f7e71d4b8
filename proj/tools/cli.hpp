#pragma once

#include "betadyn/dimension.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace betadyn::cli {

// Runs one command line (args exclude the program name). Exit codes: 0 ok,
// 1 domain or usage error (JSON error object on out), 2 precision exhausted.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::ordered_json verdict_json(const DimensionVerdict& v);
DimensionVerdict verdict_from_json(const nlohmann::ordered_json& j);

}  // namespace betadyn::cli
