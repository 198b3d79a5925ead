#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curtainlab/harness/config.hpp"
#include "curtainlab/harness/output.hpp"

namespace curtainlab::harness {

enum class Command { walk, clt, contracting, curtain_audit, geometry_audit, cocycle_audit };

std::string to_string(Command c);
std::optional<Command> parse_command(std::string_view name);
const std::vector<Command>& all_commands();

/// Runs the experiment for every preset in cfg.preset. Audit commands visit
/// each space once. Checks are named "<preset>: <check>", tables
/// "<preset>-<table>", and the report is keyed by preset.
RunResult run(Command cmd, const ExperimentConfig& cfg, std::uint64_t seed);

}  // namespace curtainlab::harness
