#include "condgate/report.hpp"

#include <sstream>

#include "condgate/jsondoc.hpp"

namespace condgate {

using num::CMatrix;
using num::CVector;
using num::cdouble;

MarkingCircuit trivial_marking_circuit(const GateSet& gs) {
  MarkingCircuit mc;
  mc.system_dim = gs.dimension();
  mc.ancilla_dims = {1};
  mc.pre = CMatrix::identity(gs.dimension());
  mc.post = CMatrix::identity(gs.dimension());
  mc.partition = Partition::trivial(gs.size());
  mc.outcomes = {CVector(std::vector<cdouble>{cdouble(1.0, 0.0)})};
  return mc;
}

namespace {

void analyze_qubit(AnalysisReport& report, const GateSet& gs) {
  report.qubit_procedure = true;
  const MarkabilityVerdict verdict = minimal_partition_qubit(gs);
  report.markable = verdict.markable ? Verdict::Yes : Verdict::No;
  report.used_prefix_inverse = verdict.used_prefix_inverse;
  if (verdict.markable && verdict.partition.has_value()) {
    report.minimal_partition = verdict.partition;
    report.trivial_partition_only = verdict.partition->is_trivial();
    report.marking_circuit = synthesize_marking_qubit(gs, verdict);
    report.marking_residual =
        verify_marking(gs, *report.marking_circuit).max_residual;
  }

  const ControllabilityDecision decision = decide_controllable_qubit(gs);
  report.controllable = decision.controllable ? Verdict::Yes : Verdict::No;
  if (decision.controllable) {
    report.control_partition = decision.partition;
    report.fixed_vector = decision.fixed_vector->psi;
    report.aligned_representatives = decision.representatives;
    report.control_circuit = synthesize_control_qubit(gs, decision);
    report.control_residual =
        verify_control(report.control_circuit->representatives,
                       *report.control_circuit)
            .max_residual;
  }
}

void analyze_general(AnalysisReport& report, const GateSet& gs) {
  const bool joint = report.discrimination.jointly == Verdict::Yes;
  if (joint) {
    report.markable = Verdict::Yes;
    report.minimal_partition = Partition::singletons(gs.size());
    report.trivial_partition_only = gs.size() == 1;
    report.marking_circuit = synthesize_marking_joint(gs);
    report.marking_residual =
        verify_marking(gs, *report.marking_circuit).max_residual;
  } else {
    // No decision procedure above qubits without joint discriminability.
    report.markable = Verdict::Unknown;
  }

  const Partition partition = joint ? Partition::singletons(gs.size())
                                    : Partition::trivial(gs.size());
  const std::optional<FixedVector> fv =
      solve_fixed_vector(gs, partition, FixedVectorMode::Projective);
  if (!fv.has_value()) {
    // A finer partition could still admit a witness; only qubit sets are
    // decided negatively.
    report.controllable = Verdict::Unknown;
    return;
  }
  const GateSet aligned = align_representatives(gs, partition, *fv);
  const MarkingCircuit mc = joint ? synthesize_marking_joint(aligned)
                                  : trivial_marking_circuit(aligned);
  report.control_circuit = synthesize_control_general(aligned, mc, *fv);
  report.controllable = Verdict::Yes;
  report.control_partition = partition;
  report.fixed_vector = fv->psi;
  report.aligned_representatives = aligned;
  report.control_residual =
      verify_control(aligned, *report.control_circuit).max_residual;
}

}  // namespace

AnalysisReport analyze_gate_set(const GateSet& gs) {
  AnalysisReport report(gs);
  for (const Unitary& u : gs.members()) {
    report.unitarity_residuals.push_back(num::unitarity_residual(u.matrix));
  }
  report.discrimination = discrimination_report(gs);
  if (gs.dimension() == 2) {
    analyze_qubit(report, gs);
  } else {
    analyze_general(report, gs);
  }
  report.estimate = decide_estimate_before_use(gs);
  return report;
}

namespace {

jsondoc::Value partition_json(const std::optional<Partition>& p) {
  if (!p.has_value()) {
    return {};
  }
  jsondoc::Array blocks;
  for (const auto& block : p->blocks()) {
    jsondoc::Array indices;
    for (std::size_t idx : block) {
      indices.push_back(jsondoc::Value(idx));
    }
    blocks.push_back(jsondoc::Value(std::move(indices)));
  }
  return jsondoc::Value(std::move(blocks));
}

std::string partition_text(const Partition& p) {
  std::string out;
  for (std::size_t b = 0; b < p.n_blocks(); ++b) {
    out += b == 0 ? "{" : " {";
    const auto& block = p.block(b);
    for (std::size_t k = 0; k < block.size(); ++k) {
      if (k > 0) out += ",";
      out += std::to_string(block[k]);
    }
    out += "}";
  }
  return out;
}

}  // namespace

std::string report_to_json(const AnalysisReport& report) {
  jsondoc::Array names;
  for (const Unitary& u : report.input.members()) {
    names.push_back(jsondoc::Value(u.name));
  }
  jsondoc::Array residuals;
  for (double r : report.unitarity_residuals) {
    residuals.push_back(jsondoc::Value(r));
  }
  jsondoc::Array pairwise;
  for (const auto& row : report.discrimination.pairwise) {
    jsondoc::Array jrow;
    for (bool b : row) {
      jrow.push_back(jsondoc::Value(b));
    }
    pairwise.push_back(jsondoc::Value(std::move(jrow)));
  }

  jsondoc::Object markability{
      {"verdict", jsondoc::Value(to_string(report.markable))},
      {"minimal_partition", partition_json(report.minimal_partition)},
      {"trivial_partition_only", jsondoc::Value(report.trivial_partition_only)},
      {"used_prefix_inverse", jsondoc::Value(report.used_prefix_inverse)},
      {"qubit_procedure", jsondoc::Value(report.qubit_procedure)},
  };

  jsondoc::Object controllability{
      {"verdict", jsondoc::Value(to_string(report.controllable))},
      {"partition", partition_json(report.control_partition)},
  };
  if (report.fixed_vector.has_value()) {
    controllability.emplace_back("fixed_vector",
                                 jsondoc::vector_value(*report.fixed_vector));
  } else {
    controllability.emplace_back("fixed_vector", jsondoc::Value());
  }
  if (report.aligned_representatives.has_value()) {
    jsondoc::Array reps;
    for (const Unitary& u : report.aligned_representatives->members()) {
      reps.push_back(jsondoc::Value(jsondoc::Object{
          {"name", jsondoc::Value(u.name)},
          {"matrix", jsondoc::matrix_value(u.matrix)},
      }));
    }
    controllability.emplace_back("representatives",
                                 jsondoc::Value(std::move(reps)));
  } else {
    controllability.emplace_back("representatives", jsondoc::Value());
  }
  controllability.emplace_back(
      "marking_residual", report.marking_residual.has_value()
                              ? jsondoc::Value(*report.marking_residual)
                              : jsondoc::Value());
  controllability.emplace_back(
      "control_residual", report.control_residual.has_value()
                              ? jsondoc::Value(*report.control_residual)
                              : jsondoc::Value());

  jsondoc::Value doc(jsondoc::Object{
      {"input", jsondoc::Value(jsondoc::Object{
                    {"dimension", jsondoc::Value(report.input.dimension())},
                    {"tolerance", jsondoc::Value(report.input.tolerance().eps)},
                    {"gates", jsondoc::Value(std::move(names))},
                })},
      {"unitarity_residuals", jsondoc::Value(std::move(residuals))},
      {"discrimination",
       jsondoc::Value(jsondoc::Object{
           {"pairwise", jsondoc::Value(std::move(pairwise))},
           {"jointly", jsondoc::Value(to_string(report.discrimination.jointly))},
       })},
      {"markability", jsondoc::Value(std::move(markability))},
      {"controllability", jsondoc::Value(std::move(controllability))},
      {"estimate_before_use",
       jsondoc::Value(jsondoc::Object{
           {"possible", jsondoc::Value(report.estimate.possible)},
           {"blocks_proportional",
            jsondoc::Value(report.estimate.blocks_proportional)},
       })},
  });
  return doc.dump();
}

std::string report_to_text(const AnalysisReport& report) {
  std::ostringstream out;
  out << "gate set: dimension " << report.input.dimension() << ", "
      << report.input.size() << " gate(s)\n";
  for (std::size_t i = 0; i < report.input.size(); ++i) {
    out << "  " << report.input.member(i).name << "  (unitarity residual "
        << jsondoc::format_double(report.unitarity_residuals[i]) << ")\n";
  }
  out << "jointly discriminable: " << to_string(report.discrimination.jointly)
      << "\n";
  out << "markable: " << to_string(report.markable);
  if (report.minimal_partition.has_value()) {
    out << "  partition " << partition_text(*report.minimal_partition);
    if (report.trivial_partition_only) {
      out << "  (trivial partition only)";
    }
    if (report.used_prefix_inverse) {
      out << "  (classified after prefix inversion)";
    }
  }
  out << "\n";
  out << "controllable: " << to_string(report.controllable) << "\n";
  if (report.control_partition.has_value()) {
    out << "  control partition " << partition_text(*report.control_partition)
        << "\n";
  }
  if (report.marking_residual.has_value()) {
    out << "  marking residual "
        << jsondoc::format_double(*report.marking_residual) << "\n";
  }
  if (report.control_residual.has_value()) {
    out << "  control residual "
        << jsondoc::format_double(*report.control_residual) << "\n";
  }
  out << "estimate before use: possible="
      << (report.estimate.possible ? "yes" : "no") << " blocks_proportional="
      << (report.estimate.blocks_proportional ? "yes" : "no") << "\n";
  return out.str();
}

}  // namespace condgate
