#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tmi/timeline.hpp"
#include "tmi/tolerances.hpp"

namespace tmi {

struct Outcome {
  std::string label;
  double probability = 0.0;
};

// A probability distribution over mutually exclusive events pinned to one
// time moment. Outcome order is declaration order and every report preserves
// it. Valid sets have unique labels, strictly positive probabilities and
// total mass 1; validate_chain re-checks all of that, so construction stays
// permissive.
struct TimeMomentSet {
  TimeMoment moment;
  std::vector<Outcome> outcomes;

  std::size_t size() const { return outcomes.size(); }
  std::optional<std::size_t> find(const std::string& label) const;
  // Throws UnknownLabel.
  std::size_t index_of(const std::string& label) const;
  double probability_of(const std::string& label) const;
  std::vector<double> probabilities() const;
};

enum class KernelKind { Deterministic, Refinement, Bijective, General };

const char* to_string(KernelKind kind);

// Row-stochastic transition map between consecutive time moment sets:
// rows[i][j] = rho(y_j | x_i).
struct OperatorKernel {
  std::vector<std::vector<double>> rows;

  std::size_t source_arity() const { return rows.size(); }
  std::size_t target_arity() const { return rows.empty() ? 0 : rows[0].size(); }

  // Deterministic: every row one-hot. Refinement: every column has at most
  // one entry above tolerance. Bijective: both.
  KernelKind classify(double tol = kProbabilityTolerance) const;
  bool is_deterministic(double tol = kProbabilityTolerance) const;
  bool is_refinement(double tol = kProbabilityTolerance) const;
  bool is_bijective(double tol = kProbabilityTolerance) const;

  static OperatorKernel identity(std::size_t n);
};

// A sequence of time moment sets joined by kernels, optionally with the
// outcome that actually occurred at each stage. The artificial_variation
// flag permits realized transitions with zero probability.
struct ProcessChain {
  std::vector<TimeMomentSet> stages;
  std::vector<OperatorKernel> kernels;
  std::optional<std::vector<std::string>> realized;
  bool artificial_variation = false;

  std::size_t stage_count() const { return stages.size(); }
};

enum class ViolationKind {
  EmptyChain,
  DuplicateLabel,
  NonPositiveProbability,
  Normalization,
  KernelCount,
  KernelEntryRange,
  KernelRowSum,
  ArityMismatch,
  MomentOrdering,
  TemporalInconsistency,
  RealizationLength,
  RealizationUnknownLabel,
  RealizationImpossible,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t stage_index = 0;  // stage or kernel index, per kind
  double deviation = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks normalization, positivity, label uniqueness, kernel stochasticity,
// arities, strict moment ordering, pushforward consistency of every stage
// against its predecessor, and the realized record if present. Violations
// come back in a fixed order (stages, kernels, ordering, consistency,
// realization).
ValidationReport validate_chain(const ProcessChain& chain);

// Plain matrix-vector product, no mass dropped. Throws ArityMismatch.
std::vector<double> pushforward_probabilities(const std::vector<double>& source,
                                              const OperatorKernel& kernel);

// Pushes a distribution one stage forward. Target outcomes whose mass falls
// below kZeroMassDrop are dropped so the result never carries zero-probability
// members. Throws ArityMismatch.
TimeMomentSet pushforward(const TimeMomentSet& source, const OperatorKernel& kernel,
                          TimeMoment target_moment,
                          const std::vector<std::string>& target_labels);

// Convenience overload: labels y1..yn, moment = source moment + 1 tick.
TimeMomentSet pushforward(const TimeMomentSet& source, const OperatorKernel& kernel);

struct SurjectivityResult {
  bool surjective = false;
  // Target outcome with no incoming edge; certifies the chain invalid.
  std::optional<std::string> witness;
};

// For a deterministic kernel and a declared all-positive target: true when
// every target outcome has an incoming edge. Throws NotDeterministic,
// ArityMismatch.
SurjectivityResult check_surjectivity(const OperatorKernel& kernel,
                                      const TimeMomentSet& target);

// True iff every kernel row equals the pushforward marginal within
// kProbabilityTolerance, i.e. p(y|x) = p(y) for all x, y.
bool independence_test(const TimeMomentSet& source, const OperatorKernel& kernel);

// Bayes reversal: rows[j][i] = rho(y_j|x_i) p(x_i) / p(y_j) against the
// pushforward marginal. Every target must carry positive mass.
OperatorKernel reverse_kernel(const TimeMomentSet& source,
                              const OperatorKernel& kernel);

}  // namespace tmi
