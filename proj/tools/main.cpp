#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace weyl::cli;
  CLI::App app{"weyl-lab: spectra of Fourier multipliers on bounded domains and their Weyl-type bounds"};
  app.require_subcommand(1);

  CommandOptions options;
  std::string out;
  std::uint64_t seed = 0;
  std::string oracle;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", options.config_path, "RunConfig JSON document")->required();
    sub->add_option("--out", out, "output directory (overrides config.output)");
    sub->add_option("--seed", seed, "Lanczos start-vector seed (overrides config.seed)");
  };
  CLI::App* spectrum = app.add_subcommand("spectrum", "compute the lowest eigenvalues");
  CLI::App* verify = app.add_subcommand("verify", "check Berezin, Li-Yau, duality and fit the Weyl law");
  CLI::App* audit = app.add_subcommand("symbol-audit", "certify the symbol assumptions and its phase volume");
  for (CLI::App* sub : {spectrum, verify, audit}) add_common(sub);
  verify->add_option("--oracle", oracle, "inject an analytic spectrum instead of solving")
      ->check(CLI::IsMember({"dirichlet-interval"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen->get_option("--out")->count() > 0) options.out = out;
  if (chosen->get_option("--seed")->count() > 0) options.seed = seed;
  options.oracle_dirichlet_interval = !oracle.empty();

  const Command command = chosen == spectrum ? Command::spectrum
                          : chosen == verify ? Command::verify
                                             : Command::symbol_audit;
  return run_command(command, options, std::cout, std::cerr);
}
