#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tmi/events.hpp"
#include "tmi/tolerances.hpp"

namespace tmi {

// Bookkeeping value for a branch that could have occurred but did not:
// negative_probability = -rho(lost | source). The entries are accounting
// only; they never enter an entropy formula.
struct BlackHoleEntry {
  std::size_t transition_index = 0;
  std::string source_label;
  std::string lost_label;
  double negative_probability = 0.0;  // in (-1, 0)
};

struct RealizedTransitionRecord {
  std::size_t transition_index = 0;
  std::string source_label;
  std::string realized_label;
  double alpha = 0.0;               // rho(realized|source) before renormalization
  double aggregate_negative = 0.0;  // alpha - 1, the total lost mass negated
  std::vector<BlackHoleEntry> lost_branches;
};

struct BlackHoleLedger {
  std::vector<RealizedTransitionRecord> transitions;
  std::vector<BlackHoleEntry> entries() const;
};

inline constexpr const char* kBlackHoleLabel = "<blackhole>";

// A realized chain under the retrospective frame, with every realized
// transition renormalized to certainty and each kernel augmented by one
// absorbing black-hole state (last row/column). Lost branch mass lives in
// the ledger as negative probabilities.
struct ExtendedChain {
  ProcessChain base;  // original chain, untouched
  std::vector<OperatorKernel> effective_kernels;
  BlackHoleLedger ledger;
  double start_probability = 1.0;

  const std::vector<std::string>& realized() const { return *base.realized; }
};

// Throws MissingRealization without a realized record, ImpossibleRealization
// when a realized transition has zero probability on a chain not flagged as
// artificial variation.
ExtendedChain extend_with_blackhole(const ProcessChain& chain);

// The black-hole state may never transfer out: its row must be zero on every
// real outcome in every effective kernel.
bool blackhole_absorbing(const ExtendedChain& chain);

struct ConservationReport {
  double start_bits = 0.0;
  double end_bits = 0.0;
  bool conserved = false;
  std::vector<BlackHoleEntry> ledger;
};

// I(start) vs I(end) of the realized path through the renormalized
// transitions. Equal by construction; verified numerically.
ConservationReport conservation_check(const ExtendedChain& chain);

// Information volume of the realized path with the raw transition
// probabilities, i.e. without the black-hole extension. Generally differs
// from the start volume, which is the point of the extension.
double realized_path_information(const ProcessChain& chain);

enum class VariationClass { Natural, Artificial, Ordinary };

const char* to_string(VariationClass v);

// ARTIFICIAL: the realized transition has probability exactly 0.
// NATURAL: 0 < rho <= threshold. ORDINARY otherwise.
VariationClass classify_variation(double rho,
                                  double threshold = kNaturalVariationThreshold);

// Label-based form. The source event defaults to a singleton source's only
// outcome; multi-outcome sources must name it.
VariationClass classify_variation(
    const TimeMomentSet& source, const OperatorKernel& kernel,
    const TimeMomentSet& target, const std::string& realized,
    double threshold = kNaturalVariationThreshold,
    const std::optional<std::string>& source_label = std::nullopt);

// Information volume of a realized transition, -log2(rho * p(source)).
// Impossible transitions carry infinite volume, reported by sentinel rather
// than a floating-point overflow artifact.
struct RealizationVolume {
  bool infinite = false;
  double bits = 0.0;  // meaningful only when !infinite
};

RealizationVolume realization_information_volume(
    const TimeMomentSet& source, const OperatorKernel& kernel,
    const TimeMomentSet& target, const std::string& realized,
    const std::optional<std::string>& source_label = std::nullopt);

}  // namespace tmi
