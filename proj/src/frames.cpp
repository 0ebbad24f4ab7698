#include "tmi/frames.hpp"

#include <cmath>
#include <stdexcept>

#include "tmi/errors.hpp"

namespace tmi {

namespace {

double entropy_of(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h + 0.0;
}

void require_segment(const ProcessChain& chain, std::size_t segment) {
  if (segment + 1 >= chain.stages.size() || segment >= chain.kernels.size()) {
    throw std::out_of_range("chain segment " + std::to_string(segment) +
                            " out of range");
  }
}

}  // namespace

UnifiedTimeMeasure UnifiedTimeMeasure::at_stage(const ProcessChain& chain,
                                                std::size_t anchor_stage) {
  if (anchor_stage >= chain.stages.size()) {
    throw std::out_of_range("frame anchor stage " + std::to_string(anchor_stage) +
                            " out of range for " +
                            std::to_string(chain.stages.size()) + " stages");
  }
  const auto window = ObservationWindow::past_infinite(
      chain.stages[anchor_stage].moment, true);
  return UnifiedTimeMeasure(anchor_stage, window);
}

UnifiedTimeMeasure UnifiedTimeMeasure::before_all(const ProcessChain& chain) {
  if (chain.stages.empty()) {
    throw std::out_of_range("cannot frame an empty chain");
  }
  // Open anchor at the first stage's moment: the window ends strictly before
  // any stage, so no stage is knowledge.
  const auto window =
      ObservationWindow::past_infinite(chain.stages.front().moment, false);
  return UnifiedTimeMeasure(std::nullopt, window);
}

FramedChain apply_frame(const ProcessChain& chain, const UnifiedTimeMeasure& frame,
                        FramePolicy policy) {
  FramedChain framed(frame.window());
  framed.anchor_stage = frame.anchor_stage();

  const bool has_realized = chain.realized.has_value();
  if (policy == FramePolicy::RequireRealized && frame.anchor_stage() &&
      !has_realized) {
    throw MissingRealization(
        "frame renormalization requested but the chain records no realized "
        "outcomes");
  }

  std::vector<bool> knowledge(chain.stages.size(), false);
  std::optional<std::size_t> last_known;
  for (std::size_t s = 0; s < chain.stages.size(); ++s) {
    knowledge[s] = window_contains(frame.window(), chain.stages[s].moment);
    if (knowledge[s]) last_known = s;
  }

  for (std::size_t s = 0; s < chain.stages.size(); ++s) {
    FramedStage stage;
    stage.status = knowledge[s] ? KnowledgeStatus::Knowledge
                                : KnowledgeStatus::Uncertain;
    if (has_realized) stage.realized = (*chain.realized)[s];

    if (knowledge[s] && has_realized) {
      // A known outcome is a certainty.
      stage.distribution.moment = chain.stages[s].moment;
      stage.distribution.outcomes = {{(*chain.realized)[s], 1.0}};
    } else if (!knowledge[s] && has_realized && last_known && s > *last_known) {
      // Condition the future on the last known outcome and push forward.
      const auto& known_stage = chain.stages[*last_known];
      TimeMomentSet current;
      current.moment = known_stage.moment;
      current.outcomes = {{(*chain.realized)[*last_known], 1.0}};
      for (std::size_t k = *last_known; k < s; ++k) {
        // Expand the point mass over the full source space so arities match.
        std::vector<double> probs(chain.stages[k].size(), 0.0);
        for (const auto& o : current.outcomes) {
          probs[chain.stages[k].index_of(o.label)] = o.probability;
        }
        TimeMomentSet expanded;
        expanded.moment = chain.stages[k].moment;
        for (std::size_t i = 0; i < probs.size(); ++i) {
          expanded.outcomes.push_back(
              {chain.stages[k].outcomes[i].label, probs[i]});
        }
        std::vector<std::string> labels;
        for (const auto& o : chain.stages[k + 1].outcomes)
          labels.push_back(o.label);
        current = pushforward(expanded, chain.kernels[k],
                              chain.stages[k + 1].moment, labels);
      }
      stage.distribution = current;
    } else {
      stage.distribution = chain.stages[s];
    }
    framed.stages.push_back(std::move(stage));
  }

  framed.effective_kernels = chain.kernels;
  if (has_realized) {
    for (std::size_t k = 0; k < chain.kernels.size(); ++k) {
      if (k + 1 >= chain.stages.size() || !knowledge[k + 1]) continue;
      const auto src = chain.stages[k].find((*chain.realized)[k]);
      const auto dst = chain.stages[k + 1].find((*chain.realized)[k + 1]);
      if (!src || !dst) continue;
      auto& row = framed.effective_kernels[k].rows[*src];
      const double original = row[*dst];
      std::fill(row.begin(), row.end(), 0.0);
      row[*dst] = 1.0;
      framed.renormalized.push_back({k, (*chain.realized)[k],
                                     (*chain.realized)[k + 1], original});
    }
  }
  return framed;
}

const char* to_string(Law law) {
  return law == Law::Theorem1 ? "T1" : "T2";
}

LawVerdict entropy_reduction_verdict(const ProcessChain& chain,
                                     std::size_t segment) {
  require_segment(chain, segment);
  const auto& kernel = chain.kernels[segment];
  if (!kernel.is_deterministic()) {
    throw NotDeterministic("entropy reduction law requires a deterministic kernel");
  }
  const auto& source = chain.stages[segment];
  const auto& target = chain.stages[segment + 1];

  LawVerdict v;
  v.law = Law::Theorem1;
  v.rhs_bits = entropy(source);
  v.lhs_bits =
      entropy_of(pushforward_probabilities(source.probabilities(), kernel));
  v.holds = v.lhs_bits <= v.rhs_bits + kProbabilityTolerance;
  v.equality = std::abs(v.lhs_bits - v.rhs_bits) < kProbabilityTolerance;
  v.equality_reason = kernel.is_bijective() ? EqualityReason::Bijection
                                            : EqualityReason::None;
  v.conditional_bits = conditional_entropy(source, kernel, Direction::Backward);
  v.decomposition_gap =
      std::abs(v.rhs_bits - (v.lhs_bits + v.conditional_bits));

  const MeasureContext ctx{
      ObservationWindow::past_infinite(target.moment, true)};
  v.framed_collapse_bits = entropy(target, ctx);
  return v;
}

LawVerdict entropy_increase_verdict(const ProcessChain& chain,
                                    std::size_t segment) {
  require_segment(chain, segment);
  const auto& kernel = chain.kernels[segment];
  if (!kernel.is_refinement()) {
    throw NotRefinement("entropy increase law requires a refinement kernel");
  }
  const auto& source = chain.stages[segment];

  LawVerdict v;
  v.law = Law::Theorem2;
  v.rhs_bits = entropy(source);
  v.lhs_bits =
      entropy_of(pushforward_probabilities(source.probabilities(), kernel));
  v.holds = v.lhs_bits >= v.rhs_bits - kProbabilityTolerance;
  v.equality = std::abs(v.lhs_bits - v.rhs_bits) < kProbabilityTolerance;
  v.equality_reason = kernel.is_bijective() ? EqualityReason::Bijection
                                            : EqualityReason::None;
  v.conditional_bits = conditional_entropy(source, kernel, Direction::Forward);
  v.decomposition_gap =
      std::abs(v.lhs_bits - (v.rhs_bits + v.conditional_bits));

  const MeasureContext ctx{
      ObservationWindow::past_infinite(source.moment, true)};
  v.framed_collapse_bits = entropy(source, ctx);
  return v;
}

double recall_entropy(const ProcessChain& chain, RecallForm form,
                      std::size_t segment) {
  require_segment(chain, segment);
  const auto& kernel = chain.kernels[segment];
  if (!kernel.is_deterministic()) {
    throw NotDeterministic("recall entropy requires a deterministic kernel");
  }
  const auto& source = chain.stages[segment];
  const auto& target = chain.stages[segment + 1];

  if (form == RecallForm::Expected) {
    const double h_cond = conditional_entropy(source, kernel, Direction::Backward);
    const double h_src = entropy(source);
    const double h_dst =
        entropy_of(pushforward_probabilities(source.probabilities(), kernel));
    if (std::abs(h_cond - (h_src - h_dst)) > kIdentityTolerance) {
      throw std::logic_error("recall decomposition H(X|Y) = H(X) - H(Y) violated");
    }
    return h_cond;
  }

  if (!chain.realized) {
    throw MissingRealization("per-event recall needs a realized outcome record");
  }
  const std::string& observed = (*chain.realized)[segment + 1];
  const std::size_t j = target.index_of(observed);

  const auto src = source.probabilities();
  const auto marginal = pushforward_probabilities(src, kernel);
  if (marginal[j] < kZeroMassDrop) {
    throw ImpossibleRealization("realized outcome '" + observed +
                                "' carries no mass");
  }
  std::vector<double> posterior(src.size(), 0.0);
  for (std::size_t i = 0; i < src.size(); ++i) {
    posterior[i] = kernel.rows[i][j] * src[i] / marginal[j];
  }
  return entropy_of(posterior);
}

}  // namespace tmi
