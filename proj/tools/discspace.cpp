// discspace: command-line driver for the norm, operator-norm, extremal and
// check experiments.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <discspace/discspace.hpp>

namespace {

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw discspace::invalid_parameter("cannot open config file " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw discspace::parse_error("$", std::string("config is not valid JSON: ") + e.what());
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Function-space norms and integral operators on the unit disc"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "csv";
  std::optional<std::uint64_t> seed;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", seed, "RNG seed for corpora and check suites");
  };
  auto* norm = app.add_subcommand("norm", "norm of each input function in one space");
  auto* opnorm = app.add_subcommand("opnorm", "closed-form norm and witnessed lower bound of S_g or T_g");
  auto* extremal = app.add_subcommand("extremal", "thin-Blaschke extremal construction or Dirichlet deficiency scan");
  auto* check = app.add_subcommand("check", "identity and inequality suites");
  for (auto* sub : {norm, opnorm, extremal, check}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = load_config(config_path);
    discspace::CommandOptions opt;
    opt.seed = seed;
    opt.n_r = discspace::detail::env_int("DISCSPACE_NR");
    opt.n_t = discspace::detail::env_int("DISCSPACE_NT");

    discspace::Table table;
    if (norm->parsed()) table = discspace::cmd_norm(cfg, opt);
    else if (opnorm->parsed()) table = discspace::cmd_opnorm(cfg, opt);
    else if (extremal->parsed()) table = discspace::cmd_extremal(cfg, opt);
    else table = discspace::cmd_check(cfg, opt);

    std::ostringstream buf;
    discspace::write_table(buf, table, discspace::parse_format(format));
    if (out_path.empty()) {
      std::cout << buf.str();
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw discspace::invalid_parameter("cannot write " + out_path);
      out << buf.str();
    }
    if (check->parsed() && !discspace::all_passed(table)) {
      std::cerr << "discspace: check suites failed\n";
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "discspace: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
