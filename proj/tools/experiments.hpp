#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace pdc::tools {

using Json = nlohmann::ordered_json;

// Flags of every subcommand; unset optionals take per-command defaults.
struct ExpOptions {
    std::string command;
    std::optional<std::uint32_t> p;
    std::optional<int> m, M, delta, rho, trials, h, bits;
    std::uint64_t seed = 1;
    std::string regime = "relaxed";
    std::uint64_t cap_bytes = 64ULL << 20;
    std::string oracle;
    std::string property;
    std::string circuit_file;
    std::string input;
    bool modified = false;
    bool stream = false;  // su-gen / ct-gen write hex lines
};

struct ExpResult {
    Json report;
    int exit_code = 0;  // 0 ok, 2 bottom-dominated or failed check
};

const std::vector<std::string>& command_names();

// Runs one subcommand. With opt.stream set, hex lines go to `stream` (discarded when null).
// Throws UsageError / PreconditionError on bad flags and ResourceError on cap violations.
ExpResult run_experiment(const ExpOptions& opt, std::ostream* stream = nullptr);

// Options recorded in a report's "parameters" block.
ExpOptions options_from_report(const Json& report);

// The report without its "wall_clock" members, serialized.
std::string replay_key(const Json& report);

}  // namespace pdc::tools
