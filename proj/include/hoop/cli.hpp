#pragma once

#include "hoop/session.hpp"
#include "hoop/set_model.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace hoop {

enum class Subcommand { Render, Optimize, Metrics, Generate, Serve };
enum class InputFormat { Auto, Items, Zones };

struct CliConfig {
    Subcommand subcommand = Subcommand::Render;
    std::string input;
    InputFormat input_format = InputFormat::Auto; // Auto: ".json" means zones
    DiagramKind kind = DiagramKind::Hoop;
    OptimizerMode optimizer = OptimizerMode::Auto;
    std::uint64_t seed = 1;
    std::string output; // empty writes to stdout
    std::optional<double> canvas;
    std::size_t n_sets = 6;
    std::size_t n_zones = 12;
    std::string host = "127.0.0.1";
    int port = 8080;
};

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kParse = 2;
inline constexpr int kValidation = 3;
inline constexpr int kThreshold = 4;
inline constexpr int kIo = 5;
} // namespace exit_code

/// Random system with distinct non-empty zones covering every set, weight
/// 1 each, sets named A, B, C, ... Identical output for identical seeds.
SetSystem generate_system(std::size_t n_sets, std::size_t n_zones, std::uint64_t seed);

/// Reads a system from disk in either input format. Item files report
/// skipped empty-interest items through `skipped`.
SetSystem load_system(const std::string& path, InputFormat format, std::size_t* skipped = nullptr);

int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with the flags documented in the README and runs it.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hoop
