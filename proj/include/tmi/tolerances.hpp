#pragma once

namespace tmi {

// Normalization, temporal consistency and verdict equality all share one
// probability tolerance; identities that chain several log evaluations get
// a looser one.
inline constexpr double kProbabilityTolerance = 1e-9;
inline constexpr double kIdentityTolerance = 1e-6;

// Pushforward mass below this is treated as a structural zero and the
// outcome is dropped (distributions never carry zero-probability members).
inline constexpr double kZeroMassDrop = 1e-12;

// Default cutoff below which a realized transition counts as natural
// variation. Configurable per call.
inline constexpr double kNaturalVariationThreshold = 1e-6;

}  // namespace tmi
