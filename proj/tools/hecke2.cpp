// Batch verification harness: runs per-statement campaigns and emits
// newline-delimited report records plus a summary line.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hecke2/campaign.hpp"

namespace {

const std::map<std::string, hecke2::Campaign::Target> kVerifyTargets = {
    {"recurrence", hecke2::Campaign::Target::Recurrence},
    {"kernel", hecke2::Campaign::Target::Kernel},
    {"normalize", hecke2::Campaign::Target::Normalize},
    {"projection", hecke2::Campaign::Target::Projection},
    {"u-agreement", hecke2::Campaign::Target::UAgreement},
    {"adapted", hecke2::Campaign::Target::Adapted},
    {"hecke-u", hecke2::Campaign::Target::HeckeU},
    {"wa", hecke2::Campaign::Target::Wa},
};

const std::map<std::string, hecke2::Campaign::Target> kEmitKinds = {
    {"sequences", hecke2::Campaign::Target::EmitSequences},
    {"kernel-basis", hecke2::Campaign::Target::EmitKernelBasis},
    {"adapted-basis", hecke2::Campaign::Target::EmitAdaptedBasis},
    {"theta", hecke2::Campaign::Target::EmitTheta},
};

const std::map<std::string, hecke2::ThetaKind> kThetaKinds = {
    {"r", hecke2::ThetaKind::R},
    {"f", hecke2::ThetaKind::F},
    {"g", hecke2::ThetaKind::G},
    {"d", hecke2::ThetaKind::D},
};

struct CommonFlags {
  std::string out;
  std::string format = "text";
  hecke2::Campaign campaign;

  void attach(CLI::App* cmd) {
    cmd->add_option("--max-n", campaign.max_n, "largest index n to check");
    cmd->add_option("--max-m", campaign.max_m, "largest index m to check");
    cmd->add_option("--depth", campaign.depth, "adapted-basis grid depth B (cells i+j <= B)");
    cmd->add_option("--primes", campaign.primes, "Hecke primes (odd, != 5)")->delimiter(',');
    cmd->add_option("--precision", campaign.precision, "series precision override");
    cmd->add_option("--threads", campaign.threads,
                    "worker threads (default: HECKE2_THREADS or hardware)");
    cmd->add_option("--out", out, "append report records to this file instead of stdout");
    cmd->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "jsonl"}));
  }

  int execute() {
    campaign.format = format == "jsonl" ? hecke2::ReportFormat::Jsonl : hecke2::ReportFormat::Text;
    if (!out.empty()) {
      std::ofstream f(out, std::ios::app);
      if (!f) {
        std::cerr << "error: cannot open " << out << " for appending\n";
        return 2;
      }
      return hecke2::run(campaign, f).exit_code();
    }
    return hecke2::run(campaign, std::cout).exit_code();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification harness for the characteristic-2 U_5 recurrence and its Hecke "
               "algebra structure"};
  app.require_subcommand(1);

  CommonFlags verify_flags;
  std::string verify_target;
  CLI::App* verify = app.add_subcommand("verify", "run a verification campaign");
  verify->add_option("target", verify_target, "campaign to run")
      ->required()
      ->check(CLI::IsMember({"recurrence", "kernel", "normalize", "projection", "u-agreement",
                             "adapted", "hecke-u", "wa"}));
  verify_flags.attach(verify);

  CommonFlags emit_flags;
  std::string emit_kind;
  std::string theta_kind = "r";
  CLI::App* emit = app.add_subcommand("emit", "emit computed objects");
  emit->add_option("kind", emit_kind, "object family to emit")
      ->required()
      ->check(CLI::IsMember({"sequences", "kernel-basis", "adapted-basis", "theta"}));
  emit->add_option("--kind-theta", theta_kind, "theta series to emit (r, f, g or d)")
      ->check(CLI::IsMember({"r", "f", "g", "d"}));
  emit_flags.attach(emit);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      verify_flags.campaign.target = kVerifyTargets.at(verify_target);
      return verify_flags.execute();
    }
    emit_flags.campaign.target = kEmitKinds.at(emit_kind);
    emit_flags.campaign.theta_kind = kThetaKinds.at(theta_kind);
    return emit_flags.execute();
  } catch (const hecke2::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hecke2::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
