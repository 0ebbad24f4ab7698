#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tmi/events.hpp"
#include "tmi/measures.hpp"
#include "tmi/timeline.hpp"
#include "tmi/tolerances.hpp"

namespace tmi {

// Observation frame anchored at a chain stage: the window (-inf, t_anchor]
// closes at that stage's moment, so the stage and everything before it is
// knowledge. A frame may also sit before every stage, in which case nothing
// collapses.
class UnifiedTimeMeasure {
 public:
  static UnifiedTimeMeasure at_stage(const ProcessChain& chain,
                                     std::size_t anchor_stage);
  static UnifiedTimeMeasure before_all(const ProcessChain& chain);

  const std::optional<std::size_t>& anchor_stage() const { return anchor_stage_; }
  const ObservationWindow& window() const { return window_; }

 private:
  UnifiedTimeMeasure(std::optional<std::size_t> anchor_stage,
                     ObservationWindow window)
      : anchor_stage_(anchor_stage), window_(window) {}

  std::optional<std::size_t> anchor_stage_;
  ObservationWindow window_;
};

enum class FramePolicy {
  UseRealizedIfPresent,
  RequireRealized,  // MissingRealization unless the chain records outcomes
};

struct FramedStage {
  TimeMomentSet distribution;
  KnowledgeStatus status = KnowledgeStatus::Uncertain;
  std::optional<std::string> realized;
};

// A realized transition into a knowledge stage whose probability collapsed
// to 1 under the frame.
struct RenormalizedTransition {
  std::size_t kernel_index = 0;
  std::string source_label;
  std::string target_label;
  double original_rho = 0.0;
};

struct FramedChain {
  explicit FramedChain(ObservationWindow w) : window(w) {}

  std::vector<FramedStage> stages;
  std::vector<OperatorKernel> effective_kernels;
  std::vector<RenormalizedTransition> renormalized;
  std::optional<std::size_t> anchor_stage;
  ObservationWindow window;
};

// Collapses every stage inside the frame's window to knowledge. With a
// realized record, knowledge stages become certainties, transitions into
// them are renormalized to 1, and later stages carry the distribution
// conditioned on the last known outcome. Without one, distributions are
// left as declared.
FramedChain apply_frame(const ProcessChain& chain, const UnifiedTimeMeasure& frame,
                        FramePolicy policy = FramePolicy::UseRealizedIfPresent);

enum class Law { Theorem1, Theorem2 };
enum class EqualityReason { None, Bijection };

const char* to_string(Law law);

struct LawVerdict {
  Law law = Law::Theorem1;
  bool holds = false;
  double lhs_bits = 0.0;  // H(Y1), marginal pushforward entropy
  double rhs_bits = 0.0;  // H(X0)
  bool equality = false;
  EqualityReason equality_reason = EqualityReason::None;
  // H(X0|Y1) for the reduction law, H(Y1|X0) for the increase law.
  double conditional_bits = 0.0;
  // Gap of the entropy decomposition H = H + H(.|.) the law rests on.
  double decomposition_gap = 0.0;
  // Gated entropy of the stage the frame anchors at; 0 by knowledge collapse.
  double framed_collapse_bits = 0.0;

  bool decomposition_ok() const { return decomposition_gap < kIdentityTolerance; }
};

// Retrospective frame (-inf, t1]: with a deterministic kernel the marginal
// pushforward entropy cannot exceed the source entropy, with equality exactly
// for bijections. Also checks H(X0) = H(Y1) + H(X0|Y1). Throws
// NotDeterministic.
LawVerdict entropy_reduction_verdict(const ProcessChain& chain,
                                     std::size_t segment = 0);

// Prospective frame (-inf, t0]: with a refinement kernel the pushforward
// entropy cannot drop below the source entropy, equality exactly for
// bijections. Also checks H(Y1) = H(X0) + H(Y1|X0). Throws NotRefinement.
LawVerdict entropy_increase_verdict(const ProcessChain& chain,
                                    std::size_t segment = 0);

enum class RecallForm {
  Realized,  // H(X0 | Y1 = realized), Bayes posterior of the recorded outcome
  Expected,  // H(X0 | Y1), asserted equal to H(X0) - H(Y1)
};

// Uncertainty of the past seen from the later moment. Deterministic kernels
// only. Throws NotDeterministic, MissingRealization.
double recall_entropy(const ProcessChain& chain, RecallForm form,
                      std::size_t segment = 0);

}  // namespace tmi
