#include "tmi/measures.hpp"

#include <cmath>

#include "tmi/errors.hpp"
#include "tmi/tolerances.hpp"

namespace tmi {

namespace {

// 0 log 0 = 0 for structural zeros.
double plog2p(double p) {
  if (p <= 0.0) return 0.0;
  return p * std::log2(p);
}

}  // namespace

const char* to_string(KnowledgeStatus status) {
  return status == KnowledgeStatus::Knowledge ? "KNOWLEDGE" : "UNCERTAIN";
}

KnowledgeStatus knowledge_status(const MeasureContext& ctx, TimeMoment moment) {
  return window_contains(ctx.window, moment) ? KnowledgeStatus::Knowledge
                                             : KnowledgeStatus::Uncertain;
}

KnowledgeTag tag_knowledge(const MeasureContext& ctx, const std::string& label,
                           TimeMoment moment) {
  return {label, moment, knowledge_status(ctx, moment)};
}

double information_volume(const TimeMomentSet& set, const std::string& label,
                          const MeasureContext& ctx) {
  const double p = set.probability_of(label);
  if (window_contains(ctx.window, set.moment)) return 0.0;
  if (p >= 1.0) return 0.0;
  return -std::log2(p);
}

double entropy(const TimeMomentSet& set) {
  double h = 0.0;
  for (const auto& o : set.outcomes) h -= plog2p(o.probability);
  return h + 0.0;  // never -0
}

double entropy(const TimeMomentSet& set, const MeasureContext& ctx) {
  if (window_contains(ctx.window, set.moment)) return 0.0;
  return entropy(set);
}

double conditional_entropy(const TimeMomentSet& source,
                           const OperatorKernel& kernel, Direction direction) {
  if (source.size() != kernel.source_arity()) {
    throw ArityMismatch("conditional_entropy: source size " +
                        std::to_string(source.size()) + " != kernel arity " +
                        std::to_string(kernel.source_arity()));
  }
  const OperatorKernel* k = &kernel;
  std::vector<double> weights;
  OperatorKernel reversed;
  if (direction == Direction::Forward) {
    weights = source.probabilities();
  } else {
    weights = pushforward_probabilities(source.probabilities(), kernel);
    reversed = reverse_kernel(source, kernel);
    k = &reversed;
  }
  double h = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    double row_h = 0.0;
    for (double v : k->rows[i]) row_h -= plog2p(v);
    h += weights[i] * row_h;
  }
  return h + 0.0;
}

JointDistribution joint_distribution(const TimeMomentSet& source,
                                     const OperatorKernel& kernel) {
  if (source.size() != kernel.source_arity()) {
    throw ArityMismatch("joint_distribution: source size " +
                        std::to_string(source.size()) + " != kernel arity " +
                        std::to_string(kernel.source_arity()));
  }
  JointDistribution joint;
  joint.p.resize(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    joint.p[i].resize(kernel.target_arity());
    for (std::size_t j = 0; j < kernel.target_arity(); ++j) {
      joint.p[i][j] = kernel.rows[i][j] * source.outcomes[i].probability;
    }
  }
  return joint;
}

AnalyticBits mutual_information_volume(const TimeMomentSet& source,
                                       const OperatorKernel& kernel) {
  const auto joint = joint_distribution(source, kernel);
  const auto marginal =
      pushforward_probabilities(source.probabilities(), kernel);
  double bits = 0.0;
  for (std::size_t i = 0; i < joint.p.size(); ++i) {
    const double px = source.outcomes[i].probability;
    for (std::size_t j = 0; j < joint.p[i].size(); ++j) {
      const double pxy = joint.p[i][j];
      if (pxy <= 0.0 || px <= 0.0 || marginal[j] <= 0.0) continue;
      bits += pxy * std::log2(pxy / (px * marginal[j]));
    }
  }
  // The quantity is nonnegative; rounding in the sum may dip a hair below 0.
  if (bits < 0.0 && bits > -kProbabilityTolerance) bits = 0.0;
  return {bits};
}

std::vector<StepPoint> knowledge_step_profile(TimeMoment moment,
                                              const std::vector<TimeMoment>& sweep) {
  std::vector<StepPoint> series;
  series.reserve(sweep.size());
  for (const auto& anchor : sweep) {
    const auto window = ObservationWindow::past_infinite(anchor, true);
    series.push_back({anchor.tick, window_contains(window, moment) ? 1.0 : 0.0});
  }
  return series;
}

}  // namespace tmi
