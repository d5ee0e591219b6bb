#pragma once

#include "tcsolve/nevanlinna_sample.hpp"
#include "tcsolve/parser.hpp"

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace tcsolve {

enum class Command { Verify, Search, Classify, Growth, Nevanlinna, Plot };

std::optional<Command> command_from_string(const std::string& name);
const char* to_string(Command c);

inline constexpr const char* kReportSchema = "tcsolve-report/1";

struct CliReport {
    /// 0 iff no module error occurred; verdicts never change it.
    int exit_code = 0;
    nlohmann::ordered_json json;
    std::string text;
    /// Sample table (nevanlinna, plot).
    std::string csv;
    /// Log-log growth figure (plot).
    std::string svg;
};

CliReport cli_run(Command command, const std::vector<ParsedInput>& inputs, const CliSettings& settings);

/// Report for input that failed to parse.
CliReport cli_error_report(Command command, const std::string& kind, const std::string& message);

/// SVG log-log plot of T(r) and log M(r) against r.
std::string render_growth_svg(const std::vector<NevanlinnaSample>& samples);

}  // namespace tcsolve
