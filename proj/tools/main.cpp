#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "condgate/circuit_io.hpp"
#include "condgate/jsondoc.hpp"
#include "condgate/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitImpossible = 1;  // set is not markable/controllable
constexpr int kExitBadInput = 2;
constexpr int kExitVerifyFailed = 3;

struct CliError {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CliError{kExitBadInput, "cannot read '" + path + "'"};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw CliError{kExitBadInput, "cannot write '" + path + "'"};
  }
  out << content;
  if (!out.good()) {
    throw CliError{kExitBadInput, "failed writing '" + path + "'"};
  }
}

condgate::GateSet load_gate_set(const std::string& path, double tol,
                                bool tol_set) {
  const std::string text = read_file(path);
  try {
    condgate::GateSet gs = condgate::parse_gate_set(text);
    if (tol_set) {
      return condgate::GateSet(gs.dimension(), gs.members(),
                               condgate::num::Tolerance{tol});
    }
    return gs;
  } catch (const condgate::Error& e) {
    throw CliError{kExitBadInput, e.what()};
  }
}

int run_analyze(const std::string& path, bool as_json, double tol,
                bool tol_set) {
  const condgate::GateSet gs = load_gate_set(path, tol, tol_set);
  const condgate::AnalysisReport report = condgate::analyze_gate_set(gs);
  std::cout << (as_json ? condgate::report_to_json(report)
                        : condgate::report_to_text(report));
  return kExitOk;
}

int run_synthesize(const std::string& path, const std::string& mode,
                   const std::string& out_path, double tol, bool tol_set) {
  const condgate::GateSet gs = load_gate_set(path, tol, tol_set);
  std::string circuit_json;
  try {
    if (mode == "marking") {
      if (gs.dimension() == 2) {
        const condgate::MarkabilityVerdict verdict =
            condgate::minimal_partition_qubit(gs);
        if (!verdict.markable) {
          std::cerr << "set is not markable\n";
          return kExitImpossible;
        }
        circuit_json = condgate::marking_to_json(
            condgate::synthesize_marking_qubit(gs, verdict));
      } else if (condgate::jointly_discriminable(gs) == condgate::Verdict::Yes) {
        circuit_json =
            condgate::marking_to_json(condgate::synthesize_marking_joint(gs));
      } else {
        std::cerr << "no marking construction applies: the set is not "
                     "jointly discriminable and is not a qubit set\n";
        return kExitImpossible;
      }
    } else {  // control
      const condgate::AnalysisReport report = condgate::analyze_gate_set(gs);
      if (report.controllable != condgate::Verdict::Yes ||
          !report.control_circuit.has_value()) {
        std::cerr << "set is not controllable"
                  << (gs.dimension() == 2 ? "" : " by the available witnesses")
                  << "\n";
        return kExitImpossible;
      }
      circuit_json = condgate::control_to_json(*report.control_circuit);
    }
  } catch (const condgate::SelfCheckFailed& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const condgate::Error& e) {
    throw CliError{kExitBadInput, e.what()};
  }
  write_file(out_path, circuit_json);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int run_verify(const std::string& path, const std::string& circuit_path,
               double tol, bool tol_set) {
  const condgate::GateSet gs = load_gate_set(path, tol, tol_set);
  const std::string circuit_text = read_file(circuit_path);
  try {
    const condgate::CircuitKind kind =
        condgate::detect_circuit_kind(circuit_text);
    if (kind == condgate::CircuitKind::Marking) {
      const condgate::MarkingCircuit mc =
          condgate::parse_marking_circuit(circuit_text, gs.tolerance());
      if (mc.system_dim != gs.dimension()) {
        throw CliError{kExitBadInput,
                       "circuit system dimension does not match the gate set"};
      }
      const condgate::MarkingCheck check = condgate::verify_marking(gs, mc);
      for (std::size_t i = 0; i < gs.size(); ++i) {
        std::cout << gs.member(i).name << ": residual "
                  << condgate::jsondoc::format_double(check.residuals[i])
                  << "\n";
      }
      std::cout << "max residual "
                << condgate::jsondoc::format_double(check.max_residual) << "\n";
      return check.ok ? kExitOk : kExitVerifyFailed;
    }

    condgate::ControlCircuit cc =
        condgate::parse_control_circuit(circuit_text, gs.tolerance());
    if (cc.system_dim() != gs.dimension() ||
        cc.representatives.size() != gs.size()) {
      throw CliError{kExitBadInput,
                     "circuit does not match the gate set's shape"};
    }
    // The gates in the file must be the same physical gates the circuit was
    // built for; the circuit's own representatives fix the phases.
    for (std::size_t i = 0; i < gs.size(); ++i) {
      const condgate::Unitary& rep = cc.representatives.member(i);
      const condgate::Unitary& given = gs.member(i);
      if (rep.name != given.name ||
          !condgate::num::equal_up_to_phase(given.matrix, rep.matrix,
                                            gs.tolerance())
               .equal) {
        throw CliError{kExitBadInput, "gate '" + given.name +
                                          "' does not match the circuit's "
                                          "representative"};
      }
    }
    const condgate::ControlCheck check =
        condgate::verify_control(cc.representatives, cc);
    for (std::size_t i = 0; i < gs.size(); ++i) {
      std::cout << gs.member(i).name << ": residual "
                << condgate::jsondoc::format_double(check.residuals[i]) << "\n";
    }
    std::cout << "max residual "
              << condgate::jsondoc::format_double(check.max_residual) << "\n";
    return check.ok ? kExitOk : kExitVerifyFailed;
  } catch (const condgate::Error& e) {
    throw CliError{kExitBadInput, e.what()};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analysis and synthesis of conditioned quantum gate circuits"};
  app.require_subcommand(1);

  std::string input_path;
  std::string out_path;
  std::string circuit_path;
  std::string mode;
  double tol = 1e-9;
  bool as_json = false;
  bool as_text = false;

  CLI::App* analyze = app.add_subcommand("analyze", "analyze a gate set");
  analyze->add_option("file", input_path, "gate set JSON")->required();
  analyze->add_flag("--json", as_json, "emit the report as JSON");
  analyze->add_flag("--text", as_text, "emit the report as text (default)");
  CLI::Option* analyze_tol =
      analyze->add_option("--tol", tol, "numeric tolerance");

  CLI::App* synthesize =
      app.add_subcommand("synthesize", "synthesize a marking or control circuit");
  synthesize->add_option("file", input_path, "gate set JSON")->required();
  synthesize->add_option("--mode", mode, "marking|control")
      ->required()
      ->check(CLI::IsMember({"marking", "control"}));
  synthesize->add_option("--out", out_path, "output circuit JSON")->required();
  CLI::Option* synthesize_tol =
      synthesize->add_option("--tol", tol, "numeric tolerance");

  CLI::App* verify = app.add_subcommand("verify", "verify a circuit file");
  verify->add_option("file", input_path, "gate set JSON")->required();
  verify->add_option("--circuit", circuit_path, "circuit JSON")->required();
  CLI::Option* verify_tol = verify->add_option("--tol", tol, "numeric tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (analyze->parsed()) {
      return run_analyze(input_path, as_json && !as_text, tol,
                         analyze_tol->count() > 0);
    }
    if (synthesize->parsed()) {
      return run_synthesize(input_path, mode, out_path, tol,
                            synthesize_tol->count() > 0);
    }
    return run_verify(input_path, circuit_path, tol, verify_tol->count() > 0);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const condgate::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
}
