#pragma once

#include <CLI11.hpp>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "table.hpp"

namespace bdelta::cli {

struct GlobalOptions {
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = 1;
};

struct Command {
  CLI::App* app = nullptr;
  std::function<Table()> run;
};

/// Registers every subcommand on app. The returned callbacks read the
/// option values bound at registration time.
std::vector<Command> register_commands(CLI::App& app, const GlobalOptions& global);

/// Exit status for a finished table: 0 if every "pass" cell is true, else 1.
int table_status(const Table& t);

}  // namespace bdelta::cli
