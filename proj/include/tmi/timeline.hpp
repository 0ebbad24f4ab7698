#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "tmi/rational.hpp"

namespace tmi {

// A point on the discrete, non-negative time axis. Moments only ever get
// compared and bounded, so integer ticks keep every containment test exact.
struct TimeMoment {
  std::int64_t tick = 0;

  TimeMoment() = default;
  explicit TimeMoment(std::int64_t t) : tick(t) {
    if (t < 0) throw std::invalid_argument("time moment tick must be >= 0");
  }

  friend auto operator<=>(const TimeMoment&, const TimeMoment&) = default;
};

// A directed interval on the time axis, described by its anchor endpoint and
// a signed duration. The far endpoint sits at anchor - duration; a positive
// duration reaches into the past, a negative one forward. A missing duration
// means the window covers all of history up to the anchor boundary.
//
// The derived frequency is 1/duration as an exact rational (0 for unbounded
// windows); it is never stored, only computed, since its only jobs are
// direction and length comparison.
class ObservationWindow {
 public:
  static ObservationWindow finite(TimeMoment anchor, std::int64_t duration,
                                  bool anchor_closed, bool far_closed);
  static ObservationWindow past_infinite(TimeMoment anchor, bool anchor_closed);
  // Inverse of frequency(): rebuilds the window from (F, anchor). F must be
  // zero (unbounded) or +/- 1/n for integer n.
  static ObservationWindow from_frequency(const Rational& f, TimeMoment anchor,
                                          bool anchor_closed, bool far_closed);

  const TimeMoment& anchor() const { return anchor_; }
  bool is_past_infinite() const { return !duration_.has_value(); }
  // Signed duration in ticks; only valid for finite windows.
  std::int64_t duration() const;
  // Tick of the far endpoint (anchor.tick - duration); may be negative when
  // the window reaches past the axis origin. Only valid for finite windows.
  std::int64_t far_tick() const;
  bool anchor_closed() const { return anchor_closed_; }
  bool far_closed() const { return far_closed_; }

  Rational frequency() const;

  // Human-readable interval, ascending: "[2,5)", "(-inf,5]".
  std::string describe() const;

 private:
  ObservationWindow(TimeMoment anchor, std::optional<std::int64_t> duration,
                    bool anchor_closed, bool far_closed);

  TimeMoment anchor_;
  std::optional<std::int64_t> duration_;  // never 0; nullopt = unbounded past
  bool anchor_closed_;
  bool far_closed_;
};

// F = 1/(end - start); the sign encodes direction.
Rational interval_to_frequency(TimeMoment start, TimeMoment end);

bool window_contains(const ObservationWindow& window, TimeMoment moment);

// Orders two finite windows by |duration| ("less" = first is shorter).
std::strong_ordering compare_durations(const ObservationWindow& a,
                                       const ObservationWindow& b);

}  // namespace tmi
