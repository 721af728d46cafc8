#pragma once

#include "mitl/rational.hpp"

#include <json.hpp>

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mitl {

/// Propositions true exactly at `t` and on the open interval up to the next breakpoint.
struct Breakpoint {
  Rational t;
  std::set<std::string> point;
  std::set<std::string> interval;
};

class SignalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A finitely-variable, ultimately periodic signal. The breakpoints describe
/// [0, coverEnd()); from breakpoint `tailStart` on, the signal repeats with
/// `period`: M(t + period) = M(t) for every t >= breakpoints[tailStart].t.
class Signal {
public:
  Signal() = default;
  /// Throws SignalError when the breakpoints are not strictly increasing from 0,
  /// the period is not positive, or the listed breakpoints contradict the period.
  Signal(std::vector<Breakpoint> breakpoints, std::size_t tailStart, Rational period);

  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  std::size_t tailStart() const { return tailStart_; }
  const Rational& tailStartTime() const { return breakpoints_[tailStart_].t; }
  const Rational& period() const { return period_; }
  /// First multiple tailStartTime + m*period (m >= 1) strictly after the last breakpoint.
  const Rational& coverEnd() const { return coverEnd_; }

  bool holds(const std::string& p, const Rational& t) const;
  std::set<std::string> propositions() const;

  /// Same signal with breakpoints listed up to (at least) `horizon`.
  Signal unrolled(const Rational& horizon) const;
  /// Same signal with exactly one listed period and no redundant breakpoints.
  Signal compact() const;

  /// Maps t to the instant inside the listed window carrying the same values.
  Rational fold(const Rational& t) const;

  nlohmann::json toJson() const;
  static Signal fromJson(const nlohmann::json& j);

private:
  /// Index of the last breakpoint <= t (t inside the listed window).
  std::size_t segmentOf(const Rational& t) const;

  std::vector<Breakpoint> breakpoints_;
  std::size_t tailStart_ = 0;
  Rational period_ = 1;
  Rational coverEnd_ = 1;
};

} // namespace mitl
