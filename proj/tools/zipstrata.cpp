#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "zipstrata/cli/commands.hpp"

namespace fs = std::filesystem;
using namespace zipstrata;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::config_error, "cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zip strata experiments over finite fields"};
  app.require_subcommand(1);
  std::string config_path, out_dir, flavor;
  std::optional<int> m_max, r_max;
  bool dot = false;
  for (const char* name : {"strata", "oracle-verify", "hasse", "functor"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value experiment file")->required();
    sub->add_option("--out", out_dir, "directory for <command>.json and timings");
    sub->add_option("--flavor", flavor, "closure order: bruhat or twisted");
    sub->add_option("--m-max", m_max)->check(CLI::PositiveNumber);
    sub->add_option("--r-max", r_max)->check(CLI::PositiveNumber);
    sub->add_flag("--dot", dot, "also emit the closure order as DOT");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  cli::ExperimentConfig config;
  try {
    config = cli::load_config(config_path);
    if (!flavor.empty()) config.order_flavor = parse_flavor(flavor);
    if (m_max) config.m_max = *m_max;
    if (r_max) config.r_max = *r_max;
    if (!out_dir.empty()) config.out = out_dir;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return cli::exit_code_for(e.kind());
  }

  auto result = cli::run_command(command, config);
  const std::string payload = result.payload.dump(2) + "\n";
  try {
    if (config.out.empty()) {
      std::cout << payload;
      if (dot && !result.dot.empty()) std::cout << result.dot;
    } else {
      fs::create_directories(config.out);
      fs::path dir(config.out);
      write_file(dir / (command + ".json"), payload);
      write_file(dir / (command + ".timings.json"), result.timings.dump(2) + "\n");
      if (dot && !result.dot.empty()) write_file(dir / "strata.dot", result.dot);
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return cli::kFailure;
  }
  if (result.payload.contains("error")) std::cerr << result.payload["error"]["message"].get<std::string>() << "\n";
  return result.exit_code;
}
