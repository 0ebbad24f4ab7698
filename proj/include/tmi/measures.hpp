#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tmi/events.hpp"
#include "tmi/timeline.hpp"

namespace tmi {

// Evaluation context for the gated measures: the window decides which events
// are knowledge. Entropy unit is fixed at bits.
struct MeasureContext {
  ObservationWindow window;
  static constexpr int log_base = 2;
};

enum class KnowledgeStatus { Knowledge, Uncertain };

const char* to_string(KnowledgeStatus status);

struct KnowledgeTag {
  std::string label;
  TimeMoment moment;
  KnowledgeStatus status = KnowledgeStatus::Uncertain;
};

KnowledgeStatus knowledge_status(const MeasureContext& ctx, TimeMoment moment);

KnowledgeTag tag_knowledge(const MeasureContext& ctx, const std::string& label,
                           TimeMoment moment);

// -log2 p(label), or exactly 0 when the set's moment lies inside the window
// (knowledge carries no information). Throws UnknownLabel.
double information_volume(const TimeMomentSet& set, const std::string& label,
                          const MeasureContext& ctx);

// Ungated Shannon entropy in bits.
double entropy(const TimeMomentSet& set);

// Window-gated entropy: exactly 0 when the set's moment is inside the window.
double entropy(const TimeMomentSet& set, const MeasureContext& ctx);

enum class Direction { Forward, Backward };

// Forward: H(Y|X) = -sum_x p(x) sum_y rho(y|x) log2 rho(y|x).
// Backward: Bayes-reverses the kernel against the pushforward marginal and
// evaluates the same formula, yielding H(X|Y). Conditional quantities take
// two observations, so no window gate applies. Throws ArityMismatch.
double conditional_entropy(const TimeMomentSet& source,
                           const OperatorKernel& kernel, Direction direction);

// p(x,y) = rho(y|x) p(x). Joining two moments needs two observations, so
// this (like mutual information) is an analytical construct only.
struct JointDistribution {
  std::vector<std::vector<double>> p;  // p[i][j] = p(x_i, y_j)
};

JointDistribution joint_distribution(const TimeMomentSet& source,
                                     const OperatorKernel& kernel);

// Marker type for quantities that exist only as analysis tools, never as a
// single-observation measurement.
struct AnalyticBits {
  double bits = 0.0;
};

// I(X;Y) = sum p(x,y) log2 [p(x,y) / (p(x)p(y))] >= 0.
AnalyticBits mutual_information_volume(const TimeMomentSet& source,
                                       const OperatorKernel& kernel);

struct StepPoint {
  std::int64_t anchor_tick = 0;
  double probability = 0.0;
};

// Probability that an event occurring at `moment` is knowledge under the
// window (-inf, anchor], for each anchor in the sweep: the unit step at the
// occurrence tick.
std::vector<StepPoint> knowledge_step_profile(TimeMoment moment,
                                              const std::vector<TimeMoment>& sweep);

}  // namespace tmi
