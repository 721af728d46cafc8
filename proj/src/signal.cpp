#include "mitl/signal.hpp"

#include <algorithm>

namespace mitl {

namespace {

mpz_class floor_div(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

} // namespace

Signal::Signal(std::vector<Breakpoint> breakpoints, std::size_t tailStart, Rational period)
    : breakpoints_(std::move(breakpoints)), tailStart_(tailStart), period_(std::move(period)) {
  if (breakpoints_.empty()) throw SignalError("signal needs at least one breakpoint");
  if (breakpoints_.front().t != 0) throw SignalError("first breakpoint must be at 0");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (breakpoints_[i].t <= breakpoints_[i - 1].t) throw SignalError("breakpoints must be strictly increasing");
  if (period_ <= 0) throw SignalError("period must be positive");
  if (tailStart_ >= breakpoints_.size()) throw SignalError("tail start out of range");

  const Rational& ts = breakpoints_[tailStart_].t;
  mpz_class m = floor_div((breakpoints_.back().t - ts) / period_) + 1;
  coverEnd_ = ts + Rational(m) * period_;

  // Every listed instant must agree with its image one period earlier.
  std::vector<Rational> probes;
  for (const auto& b : breakpoints_) {
    if (b.t < ts) continue;
    for (Rational u = b.t; u < coverEnd_; u += period_) probes.push_back(u);
    for (Rational u = b.t - period_; u >= ts; u -= period_) probes.push_back(u);
  }
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  auto valuesAt = [&](const Rational& u) {
    const auto& b = breakpoints_[segmentOf(u)];
    return b.t == u ? b.point : b.interval;
  };
  for (std::size_t i = 0; i < probes.size(); ++i) {
    Rational next = i + 1 < probes.size() ? probes[i + 1] : coverEnd_;
    for (const Rational& u : {probes[i], Rational((probes[i] + next) / 2)}) {
      if (u < ts + period_) continue;
      if (valuesAt(u) != valuesAt(u - period_))
        throw SignalError("listed breakpoints contradict the period at t=" + to_string(u));
    }
  }
}

std::size_t Signal::segmentOf(const Rational& t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                             [](const Rational& v, const Breakpoint& b) { return v < b.t; });
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

Rational Signal::fold(const Rational& t) const {
  if (t < coverEnd_) return t;
  mpz_class k = floor_div((t - coverEnd_) / period_) + 1;
  return t - Rational(k) * period_;
}

bool Signal::holds(const std::string& p, const Rational& t) const {
  if (t < 0) throw SignalError("negative instant");
  Rational u = fold(t);
  const auto& b = breakpoints_[segmentOf(u)];
  return (b.t == u ? b.point : b.interval).count(p) > 0;
}

std::set<std::string> Signal::propositions() const {
  std::set<std::string> out;
  for (const auto& b : breakpoints_) {
    out.insert(b.point.begin(), b.point.end());
    out.insert(b.interval.begin(), b.interval.end());
  }
  return out;
}

Signal Signal::compact() const {
  const Rational end = tailStartTime() + period_;
  std::vector<Breakpoint> out;
  std::size_t newTail = 0;
  for (std::size_t i = 0; i < breakpoints_.size() && breakpoints_[i].t < end; ++i) {
    const auto& b = breakpoints_[i];
    bool keep = i == 0 || i == tailStart_ || b.point != out.back().interval || b.interval != b.point;
    if (!keep) continue;
    if (i == tailStart_) newTail = out.size();
    out.push_back(b);
  }
  return Signal(std::move(out), newTail, period_);
}

Signal Signal::unrolled(const Rational& horizon) const {
  Signal base = compact();
  std::vector<Breakpoint> out = base.breakpoints_;
  const std::size_t first = base.tailStart_, count = out.size() - first;
  Rational shift = period_;
  while (out.back().t < horizon) {
    for (std::size_t i = 0; i < count; ++i) {
      Breakpoint b = out[first + i];
      b.t += shift;
      out.push_back(std::move(b));
    }
    shift += period_;
  }
  return Signal(std::move(out), base.tailStart_, period_);
}

nlohmann::json Signal::toJson() const {
  nlohmann::json bps = nlohmann::json::array();
  for (const auto& b : breakpoints_) {
    bps.push_back({{"t", to_string(b.t)},
                   {"point", std::vector<std::string>(b.point.begin(), b.point.end())},
                   {"interval", std::vector<std::string>(b.interval.begin(), b.interval.end())}});
  }
  return {{"breakpoints", bps}, {"tailStart", tailStart_}, {"period", to_string(period_)}};
}

Signal Signal::fromJson(const nlohmann::json& j) {
  try {
    std::vector<Breakpoint> bps;
    for (const auto& b : j.at("breakpoints")) {
      Breakpoint bp;
      bp.t = parse_rational(b.at("t").get<std::string>());
      for (const auto& p : b.at("point")) bp.point.insert(p.get<std::string>());
      for (const auto& p : b.at("interval")) bp.interval.insert(p.get<std::string>());
      bps.push_back(std::move(bp));
    }
    return Signal(std::move(bps), j.at("tailStart").get<std::size_t>(),
                  parse_rational(j.at("period").get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw SignalError(std::string("malformed signal JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SignalError(std::string("malformed signal JSON: ") + e.what());
  }
}

} // namespace mitl
