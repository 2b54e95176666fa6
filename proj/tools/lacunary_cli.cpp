// Command-line front end: norms, classify, counterexample, inclusion.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "lacunary/io/commands.hpp"

namespace fs = std::filesystem;
using lacunary::io::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lacunary::Error(lacunary::Errc::Config, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw lacunary::Error(lacunary::Errc::Config, "cannot write '" + path.string() + "'");
  out << contents;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lacunary Musielak-Orlicz sequence-space toolkit"};
  app.set_version_flag("--version", std::string(LACUNARY_VERSION));
  app.require_subcommand(1);

  std::string config_path, out_dir, preset;
  bool strict = false;
  std::uint64_t seed = 0;
  const std::pair<const char*, const char*> commands[] = {
      {"norms", "modular, Luxemburg and Orlicz norms, conjugate values, delta2 check"},
      {"classify", "statistics, trajectories and verdicts for one sequence"},
      {"counterexample", "build a counterexample sequence and check its limits"},
      {"inclusion", "run the inclusion matrix over a generated corpus"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_option("--preset", preset, "named base config, merged under --config")
        ->check(CLI::IsMember(lacunary::io::preset_names()));
    sub->add_flag("--strict", strict, "exit with code 2 when a check fails");
    sub->add_option("--seed", seed, "override the corpus or generator seed");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  const auto* sub = app.get_subcommands().front();

  try {
    std::optional<json> config;
    if (!config_path.empty()) config = lacunary::io::parse_json_text(read_file(config_path), config_path);
    std::optional<std::string> preset_name;
    if (!preset.empty()) preset_name = preset;
    if (!config && !preset_name) config = json::object();
    const json merged = lacunary::io::compose_config(preset_name, config);

    lacunary::io::CommandOptions opt;
    if (sub->count("--seed")) opt.seed = seed;
    if (!out_dir.empty()) opt.out_dir = out_dir;
    const auto result = lacunary::io::run_command(command, merged, opt);

    const fs::path dir(result.out_dir);
    fs::create_directories(dir);
    write_file(dir / "report.json", result.report.dump(2) + "\n");
    for (const auto& [name, contents] : result.files) write_file(dir / name, contents);

    std::cout << result.summary << "wrote " << (dir / "report.json").string();
    for (const auto& f : result.files) std::cout << ", " << (dir / f.first).string();
    std::cout << "\n";
    if (strict && result.strict_failure) {
      std::cerr << "strict: at least one check failed\n";
      return 2;
    }
    return 0;
  } catch (const lacunary::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
