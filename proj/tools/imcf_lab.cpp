// imcf-lab: runs verification campaigns from a key=value config file.
// Exit status: 0 all claims pass (or inconclusive after a flow breakdown),
// 1 some claim fails, 2 configuration or runtime error.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "imcf/imcf.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

int report_error(imcf_status status) {
  std::fprintf(stderr, "imcf-lab: %s: %s\n", imcf_status_string(status), imcf_last_error());
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inverse mean curvature flow laboratory for Schwarzschild space"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  bool quiet = false;

  const std::vector<std::pair<const char*, const char*>> commands{
      {"geometry-check", "static equations, Minkowski inequality and flux on the configured surface"},
      {"flow", "smooth flow: series, monotonicity and limit"},
      {"levelset", "weak flow through the regularized level-set equation"},
      {"verify", "all smooth-flow verifications"},
      {"all", "verify plus the level-set campaign"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", config_path, "configuration file (key=value per line)")->required();
    sub->add_option("-o,--out", out_dir, "output directory (default: $IMCF_LAB_OUT, else imcf-out)");
    sub->add_option("overrides", overrides, "key=value assignments applied after the config file");
    sub->add_flag("-q,--quiet", quiet, "suppress the report on stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  if (out_dir.empty()) {
    const char* env = std::getenv("IMCF_LAB_OUT");
    out_dir = (env && *env) ? env : "imcf-out";
  }
  const std::string command = app.get_subcommands().front()->get_name();

  std::vector<const char*> override_ptrs;
  for (const std::string& o : overrides) override_ptrs.push_back(o.c_str());

  imcf_config* config = nullptr;
  imcf_status status = imcf_config_load(config_path.c_str(), override_ptrs.data(), override_ptrs.size(), &config);
  if (status != IMCF_OK) return report_error(status);

  imcf_result* result = nullptr;
  status = imcf_lab_run(config, command.c_str(), out_dir.c_str(), &result);
  imcf_config_free(config);
  if (status != IMCF_OK) return report_error(status);

  if (!quiet) std::fputs(imcf_result_summary(result), stdout);
  imcf_verdict verdict = IMCF_VERDICT_FAIL;
  imcf_result_verdict(result, &verdict);
  imcf_result_free(result);
  std::printf("artifacts written to %s\n", out_dir.c_str());
  return verdict == IMCF_VERDICT_FAIL ? kExitFail : kExitPass;
}
