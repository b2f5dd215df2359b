#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "szabolab/dsl.hpp"
#include "szabolab/riemext.hpp"

namespace szabolab {

enum class Command { check_cyclic, check_szabo, extend, verify_paper, full };

std::optional<Command> command_from_string(const std::string& name);
std::string to_string(Command cmd);

struct Options {
    std::uint64_t seed = 42;
    int samples = 50;
    /// Timings are nondeterministic, so they only enter the report on request;
    /// the default JSON output is byte-identical across runs.
    bool include_timings = false;
};

struct Report {
    nlohmann::json body;
    bool any_failure = false;
};

/// Dispatch a command. File-based commands need a spec; verify_paper ignores it.
Report run(Command cmd, const std::optional<ConnectionSpec>& spec, const Options& opt);

/// JSON rendering: sorted keys, two-space indent, newline terminated.
std::string json_string(const Report& report);

/// Human-readable rendering.
std::string text_string(const Report& report);

nlohmann::json connection_spec_to_json(const ConnectionSpec& spec);
nlohmann::json connection_to_json(const Connection& c);
nlohmann::json metric_to_json(const NeutralMetric& g);
nlohmann::json szabo_verdict_to_json(const SzaboVerdict& v, std::optional<bool> trace_identity_ok);
nlohmann::json cyclic_verdict_to_json(const CyclicVerdict& v);

}  // namespace szabolab
