#pragma once

#include <optional>
#include <string>
#include <vector>

#include "condgate/control.hpp"
#include "condgate/discrimination.hpp"

namespace condgate {

// A trivial single-block marking: no information extracted, nothing
// disturbed. Valid for every set and every dimension.
MarkingCircuit trivial_marking_circuit(const GateSet& gs);

struct AnalysisReport {
  explicit AnalysisReport(GateSet input_set) : input(std::move(input_set)) {}

  GateSet input;
  std::vector<double> unitarity_residuals;
  DiscriminationReport discrimination;

  Verdict markable = Verdict::Unknown;
  std::optional<Partition> minimal_partition;
  bool trivial_partition_only = false;
  bool used_prefix_inverse = false;
  bool qubit_procedure = false;

  Verdict controllable = Verdict::Unknown;
  std::optional<Partition> control_partition;
  std::optional<num::CVector> fixed_vector;
  std::optional<GateSet> aligned_representatives;
  std::optional<double> marking_residual;
  std::optional<double> control_residual;
  std::optional<MarkingCircuit> marking_circuit;
  std::optional<ControlCircuit> control_circuit;

  EstimateBeforeUse estimate;
};

// Full decision pipeline. Qubit sets get the complete markability and
// controllability characterization; higher dimensions are decided through
// joint discriminability and fixed-vector search, leaving Unknown where no
// certificate exists either way.
AnalysisReport analyze_gate_set(const GateSet& gs);

std::string report_to_json(const AnalysisReport& report);
std::string report_to_text(const AnalysisReport& report);

}  // namespace condgate
