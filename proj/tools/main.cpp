#include <besseldelta/errors.hpp>
#include <fstream>
#include <iostream>
#include <set>

#include "commands.hpp"

namespace {

using bdelta::cli::Table;

constexpr int kExitTolerance = 1;
constexpr int kExitPrecondition = 2;

// --config FILE holds key=value lines; each key becomes --key=value right after
// the subcommand unless the command line already sets it.
std::vector<std::string> merge_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string config;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (config.empty()) return args;
  std::ifstream in(config);
  if (!in) throw bdelta::ParameterError("cannot read config file " + config);

  std::set<std::string> given;
  for (const auto& a : args) {
    if (a.rfind("--", 0) != 0) continue;
    const auto eq = a.find('=');
    given.insert(eq == std::string::npos ? a.substr(2) : a.substr(2, eq - 2));
  }
  std::vector<std::string> extra;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw bdelta::ParameterError(config + ":" + std::to_string(lineno) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    if (!given.count(key)) extra.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
  }
  // first positional token is the subcommand
  std::size_t pos = args.size();
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i].rfind("-", 0) != 0) {
      pos = i + 1;
      break;
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos), extra.begin(), extra.end());
  return args;
}

void record_provenance(Table& t, const CLI::App* sub) {
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name.empty()) continue;
    t.defaults[name] = opt->get_default_str();
    if (opt->count() > 0) {
      std::string v;
      for (const auto& r : opt->results()) v += (v.empty() ? "" : ",") + r;
      t.params[name] = v;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bdelta: numerical checks for a Bessel delta-symbol method"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  bdelta::cli::GlobalOptions global;
  app.add_option("--format", global.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output,-o", global.output, "output file (default: stdout)");
  app.add_option("--seed", global.seed, "seed for randomized sweeps");
  const auto commands = bdelta::cli::register_commands(app, global);

  try {
    std::vector<std::string> args = merge_config(argc, argv);
    std::vector<const char*> cargs;
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), const_cast<char**>(cargs.data()));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitPrecondition;
  } catch (const bdelta::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }

  for (const auto& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    try {
      Table t = cmd.run();
      t.sort();
      record_provenance(t, cmd.app);
      t.params["format"] = global.format;
      t.params["seed"] = std::to_string(global.seed);
      std::ofstream file;
      if (!global.output.empty()) {
        file.open(global.output);
        if (!file) throw bdelta::ParameterError("cannot open output file " + global.output);
      }
      std::ostream& os = global.output.empty() ? std::cout : file;
      if (global.format == "json") t.write_json(os);
      else t.write_csv(os);
      return bdelta::cli::table_status(t);
    } catch (const bdelta::ParameterError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitPrecondition;
    } catch (const bdelta::DomainError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitPrecondition;
    } catch (const bdelta::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitTolerance;
    }
  }
  return kExitPrecondition;
}
