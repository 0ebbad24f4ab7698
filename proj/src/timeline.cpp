#include "tmi/timeline.hpp"

#include <algorithm>

#include "tmi/errors.hpp"

namespace tmi {

ObservationWindow::ObservationWindow(TimeMoment anchor,
                                     std::optional<std::int64_t> duration,
                                     bool anchor_closed, bool far_closed)
    : anchor_(anchor),
      duration_(duration),
      anchor_closed_(anchor_closed),
      far_closed_(far_closed) {}

ObservationWindow ObservationWindow::finite(TimeMoment anchor,
                                            std::int64_t duration,
                                            bool anchor_closed,
                                            bool far_closed) {
  if (duration == 0)
    throw ZeroLengthInterval("zero-length window is a time moment, not a window");
  return ObservationWindow(anchor, duration, anchor_closed, far_closed);
}

ObservationWindow ObservationWindow::past_infinite(TimeMoment anchor,
                                                   bool anchor_closed) {
  return ObservationWindow(anchor, std::nullopt, anchor_closed, false);
}

ObservationWindow ObservationWindow::from_frequency(const Rational& f,
                                                    TimeMoment anchor,
                                                    bool anchor_closed,
                                                    bool far_closed) {
  if (f.is_zero()) return past_infinite(anchor, anchor_closed);
  if (f.num != 1 && f.num != -1)
    throw std::invalid_argument("frequency " + f.to_string() +
                                " does not invert to a whole-tick duration");
  return finite(anchor, f.num > 0 ? f.den : -f.den, anchor_closed, far_closed);
}

std::int64_t ObservationWindow::duration() const {
  if (!duration_) throw UnboundedWindow("window has no finite duration");
  return *duration_;
}

std::int64_t ObservationWindow::far_tick() const {
  return anchor_.tick - duration();
}

Rational ObservationWindow::frequency() const {
  if (!duration_) return Rational();
  return Rational(1, *duration_);
}

std::string ObservationWindow::describe() const {
  if (!duration_) {
    return std::string("(-inf,") + std::to_string(anchor_.tick) +
           (anchor_closed_ ? "]" : ")");
  }
  const std::int64_t far = far_tick();
  const std::int64_t lo = std::min(anchor_.tick, far);
  const std::int64_t hi = std::max(anchor_.tick, far);
  const bool lo_closed = (lo == far) ? far_closed_ : anchor_closed_;
  const bool hi_closed = (hi == far) ? far_closed_ : anchor_closed_;
  return std::string(lo_closed ? "[" : "(") + std::to_string(lo) + "," +
         std::to_string(hi) + (hi_closed ? "]" : ")");
}

Rational interval_to_frequency(TimeMoment start, TimeMoment end) {
  if (start.tick == end.tick)
    throw ZeroLengthInterval("interval endpoints coincide at tick " +
                             std::to_string(start.tick));
  return Rational(1, end.tick - start.tick);
}

bool window_contains(const ObservationWindow& window, TimeMoment moment) {
  const std::int64_t t = moment.tick;
  const std::int64_t a = window.anchor().tick;
  if (window.is_past_infinite()) {
    return t < a || (window.anchor_closed() && t == a);
  }
  const std::int64_t f = window.far_tick();
  const std::int64_t lo = std::min(a, f);
  const std::int64_t hi = std::max(a, f);
  const bool lo_closed = (lo == f) ? window.far_closed() : window.anchor_closed();
  const bool hi_closed = (hi == f) ? window.far_closed() : window.anchor_closed();
  const bool above_lo = t > lo || (lo_closed && t == lo);
  const bool below_hi = t < hi || (hi_closed && t == hi);
  return above_lo && below_hi;
}

std::strong_ordering compare_durations(const ObservationWindow& a,
                                       const ObservationWindow& b) {
  if (a.is_past_infinite() || b.is_past_infinite())
    throw UnboundedWindow("duration comparison requires finite windows");
  const std::int64_t la = std::abs(a.duration());
  const std::int64_t lb = std::abs(b.duration());
  return la <=> lb;
}

}  // namespace tmi
