#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "CLI11.hpp"
#include "qprob/qprob.h"

// Exit contract: 0 success, 1 a check ran and failed, 2 bad input
// (expression or flags), 3 engine error.
namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitEngineError = 3;

int report_failure(qp_status status) {
  std::fprintf(stderr, "error (%s): %s\n", qp_status_name(status),
               qp_last_error());
  return status == QP_ERROR_ARGUMENT || status == QP_ERROR_PARSE
             ? kExitBadInput
             : kExitEngineError;
}

bool write_file(const std::string& path, const char* data, size_t length,
                bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  out.write(data, std::streamsize(length));
  return bool(out);
}

/// Prints the payload and converts the verdict into the exit code.
int finish(qp_status status, char* payload, int32_t pass) {
  if (status != QP_OK) return report_failure(status);
  std::fputs(payload, stdout);
  qp_string_free(payload);
  return pass != 0 ? kExitPass : kExitCheckFailed;
}

int dump_artifacts(const std::string& measure, const std::string& expr,
                   int32_t grid, const std::string& field_path,
                   const std::string& mask_path, double mask_level) {
  (void)measure;
  qp_domain* domain = nullptr;
  qp_status status = qp_domain_create(grid, &domain);
  if (status != QP_OK) return report_failure(status);
  qp_field* field = nullptr;
  status = qp_field_from_expression(domain, expr.c_str(), &field);
  if (status != QP_OK) {
    qp_domain_destroy(domain);
    return report_failure(status);
  }
  int code = kExitPass;
  if (!field_path.empty()) {
    char* csv = nullptr;
    status = qp_field_to_csv(field, &csv);
    if (status != QP_OK) {
      code = report_failure(status);
    } else {
      if (!write_file(field_path, csv, std::strlen(csv), false)) {
        std::fprintf(stderr, "error: cannot write %s\n", field_path.c_str());
        code = kExitEngineError;
      }
      qp_string_free(csv);
    }
  }
  if (code == kExitPass && !mask_path.empty()) {
    const bool pgm =
        mask_path.size() >= 4 && mask_path.substr(mask_path.size() - 4) == ".pgm";
    if (pgm) {
      uint8_t* bytes = nullptr;
      int64_t length = 0;
      status = qp_field_superlevel_pgm(field, mask_level, &bytes, &length);
      if (status != QP_OK) {
        code = report_failure(status);
      } else {
        if (!write_file(mask_path, reinterpret_cast<const char*>(bytes),
                        size_t(length), true)) {
          std::fprintf(stderr, "error: cannot write %s\n", mask_path.c_str());
          code = kExitEngineError;
        }
        qp_buffer_free(bytes);
      }
    } else {
      char* rle = nullptr;
      status = qp_field_superlevel_rle(field, mask_level, &rle);
      if (status != QP_OK) {
        code = report_failure(status);
      } else {
        if (!write_file(mask_path, rle, std::strlen(rle), false)) {
          std::fprintf(stderr, "error: cannot write %s\n", mask_path.c_str());
          code = kExitEngineError;
        }
        qp_string_free(rle);
      }
    }
  }
  qp_field_destroy(field);
  qp_domain_destroy(domain);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"layer-cake integration against quasi-measures on the square"};
  app.require_subcommand(1);

  std::string measure = "aarnes";
  std::string expr;
  int32_t grid = 513;
  double tol = 1e-3;
  double threshold = 0.0;
  int64_t steps = 32;
  uint64_t seed = 12345;
  std::string dump_field_path;
  std::string dump_mask_path;
  double dump_level = 0.0;
  std::string qspace_file;

  CLI::App* cmd_integrate =
      app.add_subcommand("integrate", "layer-cake integral of an expression");
  cmd_integrate->add_option("--measure", measure, "aarnes | uniform")
      ->capture_default_str();
  cmd_integrate->add_option("--expr", expr, "observable expression")
      ->required();
  cmd_integrate->add_option("--grid", grid, "odd grid resolution")
      ->capture_default_str();
  cmd_integrate->add_option("--tol", tol, "bracket half-width target")
      ->capture_default_str();
  cmd_integrate->add_option("--dump-field", dump_field_path,
                            "also write the sampled field as CSV");
  cmd_integrate->add_option(
      "--dump-mask", dump_mask_path,
      "also write the mask {expr > level} (binary PGM when the "
      "path ends in .pgm, run-length text otherwise)");
  cmd_integrate
      ->add_option("--dump-level", dump_level, "threshold for --dump-mask")
      ->capture_default_str();

  CLI::App* cmd_cdf =
      app.add_subcommand("cdf", "distribution function as CSV with header t,F");
  cmd_cdf->add_option("--measure", measure, "aarnes | uniform")
      ->capture_default_str();
  cmd_cdf->add_option("--expr", expr, "observable expression")->required();
  cmd_cdf->add_option("--grid", grid, "odd grid resolution")
      ->capture_default_str();

  CLI::App* cmd_demo = app.add_subcommand(
      "demo-nonlinearity",
      "integrals of x^2, y^2 and their sum; fails when the additivity gap "
      "is off its expected value");
  cmd_demo->add_option("--measure", measure, "aarnes | uniform")
      ->capture_default_str();
  cmd_demo->add_option("--grid", grid, "odd grid resolution")
      ->capture_default_str();
  cmd_demo->add_option("--tol", tol, "integration tolerance")
      ->capture_default_str();

  CLI::App* cmd_recover = app.add_subcommand(
      "recover", "rebuild P{expr > t} from integrals of ramp compositions");
  cmd_recover->add_option("--measure", measure, "aarnes | uniform")
      ->capture_default_str();
  cmd_recover->add_option("--expr", expr, "observable expression")->required();
  cmd_recover->add_option("--t", threshold, "level of the target superlevel set")
      ->capture_default_str();
  cmd_recover->add_option("--grid", grid, "odd grid resolution")
      ->capture_default_str();
  cmd_recover->add_option("--steps", steps, "index cap for the ramp chain")
      ->capture_default_str();
  cmd_recover->add_option("--tol", tol, "integration tolerance")
      ->capture_default_str();

  CLI::App* cmd_check =
      app.add_subcommand("check", "property suites; exit 1 on any failure");
  cmd_check->require_subcommand(1);

  int32_t axioms_grid = 257;
  CLI::App* check_axioms = cmd_check->add_subcommand(
      "axioms", "additivity, monotone convergence, regularity");
  check_axioms->add_option("--measure", measure, "aarnes | uniform")
      ->capture_default_str();
  check_axioms->add_option("--grid", axioms_grid, "odd grid resolution")
      ->capture_default_str();
  check_axioms->add_option("--seed", seed, "corpus seed")
      ->capture_default_str();

  int32_t staircase_grid = 65;
  CLI::App* check_staircase = cmd_check->add_subcommand(
      "staircase", "dominated decomposition sums and pointwise bounds");
  check_staircase->add_option("--grid", staircase_grid, "odd grid resolution")
      ->capture_default_str();
  check_staircase->add_option("--seed", seed, "corpus seed")
      ->capture_default_str();

  int32_t urysohn_grid = 129;
  CLI::App* check_urysohn = cmd_check->add_subcommand(
      "urysohn", "separating observables hit their level conditions exactly");
  check_urysohn->add_option("--grid", urysohn_grid, "odd grid resolution")
      ->capture_default_str();
  check_urysohn->add_option("--seed", seed, "corpus seed")
      ->capture_default_str();

  CLI::App* check_qspace = cmd_check->add_subcommand(
      "qspace", "validate a finite open family and enumerate its measures");
  check_qspace->add_option("--file", qspace_file, "JSON description")
      ->required();

  CLI::App* check_recover = cmd_check->add_subcommand(
      "recover", "sup-chain recovery matches direct evaluation");
  check_recover->add_option("--measure", measure, "aarnes | uniform")
      ->capture_default_str();
  check_recover->add_option("--expr", expr, "observable expression")
      ->required();
  check_recover
      ->add_option("--t", threshold, "level of the target superlevel set")
      ->capture_default_str();
  check_recover->add_option("--grid", grid, "odd grid resolution")
      ->capture_default_str();
  check_recover->add_option("--steps", steps, "index cap for the ramp chain")
      ->capture_default_str();
  check_recover->add_option("--tol", tol, "integration tolerance")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitBadInput;
  }

  if (cmd_integrate->parsed()) {
    char* json = nullptr;
    const qp_status status =
        qp_run_integrate(measure.c_str(), expr.c_str(), grid, tol, &json);
    if (status != QP_OK) return report_failure(status);
    std::fputs(json, stdout);
    qp_string_free(json);
    if (!dump_field_path.empty() || !dump_mask_path.empty()) {
      return dump_artifacts(measure, expr, grid, dump_field_path,
                            dump_mask_path, dump_level);
    }
    return kExitPass;
  }

  if (cmd_cdf->parsed()) {
    char* csv = nullptr;
    const qp_status status =
        qp_run_cdf_csv(measure.c_str(), expr.c_str(), grid, &csv);
    if (status != QP_OK) return report_failure(status);
    std::fputs(csv, stdout);
    qp_string_free(csv);
    return kExitPass;
  }

  if (cmd_demo->parsed()) {
    char* json = nullptr;
    int32_t pass = 0;
    const qp_status status =
        qp_run_demo_nonlinearity(measure.c_str(), grid, tol, &json, &pass);
    return finish(status, json, pass);
  }

  if (cmd_recover->parsed() || check_recover->parsed()) {
    char* json = nullptr;
    int32_t pass = 0;
    const qp_status status =
        qp_run_recover(measure.c_str(), expr.c_str(), threshold, grid, steps,
                       tol, &json, &pass);
    return finish(status, json, pass);
  }

  if (check_axioms->parsed()) {
    char* json = nullptr;
    int32_t pass = 0;
    const qp_status status =
        qp_run_check_axioms(measure.c_str(), axioms_grid, seed, &json, &pass);
    return finish(status, json, pass);
  }

  if (check_staircase->parsed()) {
    char* json = nullptr;
    int32_t pass = 0;
    const qp_status status =
        qp_run_check_staircase(staircase_grid, seed, &json, &pass);
    return finish(status, json, pass);
  }

  if (check_urysohn->parsed()) {
    char* json = nullptr;
    int32_t pass = 0;
    const qp_status status =
        qp_run_check_urysohn(urysohn_grid, seed, &json, &pass);
    return finish(status, json, pass);
  }

  if (check_qspace->parsed()) {
    std::ifstream in(qspace_file);
    if (!in) {
      std::fprintf(stderr, "error: cannot read %s\n", qspace_file.c_str());
      return kExitBadInput;
    }
    const std::string text((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    char* json = nullptr;
    int32_t pass = 0;
    const qp_status status = qp_run_check_qspace(text.c_str(), &json, &pass);
    return finish(status, json, pass);
  }

  return kExitBadInput;
}
