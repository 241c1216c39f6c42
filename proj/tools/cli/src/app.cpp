#include "gamow/cli/app.hpp"

#include <CLI11.hpp>
#include <ostream>
#include <sstream>

#include "gamow/error.hpp"

namespace gamow::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resonance decay laboratory: Gamow amplitudes, truncated spectra, width/lifetime fits and "
               "relativistic Gamow vectors.",
               "gamow-lab"};
  std::string command;
  std::string config_path;
  std::vector<std::string> assignments;
  std::string format;
  std::string tol;
  std::string seed;
  bool explain = false;
  app.add_option("command", command, "survival, norm, fit, fermi or relativistic")
      ->required()
      ->check(CLI::IsMember({"survival", "norm", "fit", "fermi", "relativistic"}));
  app.add_option("--config", config_path, "flat key = value scenario file");
  app.add_option("--set", assignments, "override one key, key=value (repeatable)");
  app.add_option("--format", format, "csv (default) or json-doc")->check(CLI::IsMember({"csv", "json-doc"}));
  app.add_option("--tol", tol, "absolute quadrature tolerance");
  app.add_option("--seed", seed, "base seed for generated data");
  app.add_flag("--explain", explain, "add notes on the model and the preset sources to the output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "gamow-lab: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    Config config = config_path.empty() ? Config{} : Config::load(config_path);
    for (const auto& a : assignments) config.assign(a);
    if (!format.empty()) config.set("format", format);
    if (!tol.empty()) config.set("tol", tol);
    if (!seed.empty()) config.set("seed", seed);
    const OutputFormat output = parse_format(config.get_string("format", "csv"));
    const Table table = run_command(command, config, explain);
    // Buffered so a failure never leaves half a table on stdout.
    std::ostringstream buffer;
    write_table(buffer, table, output);
    out << buffer.str();
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "gamow-lab: config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const PreconditionError& e) {
    err << "gamow-lab: invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "gamow-lab: numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "gamow-lab: error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace gamow::cli
