#pragma once

#include "mitl/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mitl {

/// A metric interval <a,b> with natural endpoints; b may be +inf.
class TimeInterval {
public:
  TimeInterval() = default;

  /// Throws IntervalError when lower >= upper or when the interval is closed at infinity.
  static TimeInterval make(std::uint64_t lower, std::optional<std::uint64_t> upper, bool lowerOpen,
                           bool upperOpen);
  static TimeInterval unbounded(std::uint64_t lower, bool lowerOpen) {
    return make(lower, std::nullopt, lowerOpen, true);
  }

  std::uint64_t lower() const { return lower_; }
  const std::optional<std::uint64_t>& upper() const { return upper_; }
  bool lowerOpen() const { return lowerOpen_; }
  bool upperOpen() const { return upperOpen_; }
  bool isUnbounded() const { return !upper_; }
  bool startsAtZero() const { return lower_ == 0; }

  bool contains(const Rational& d) const;

  /// Concrete-syntax form, e.g. "(2,3]" or "[0,inf)".
  std::string str() const;

  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;

private:
  std::uint64_t lower_ = 0;
  std::optional<std::uint64_t> upper_;
  bool lowerOpen_ = true;
  bool upperOpen_ = true;
};

class IntervalError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class MitlOp {
  Prop,
  True,
  Not,
  And,
  Until,
  Since,
  Eventually,
  Globally,
  PastEventually,
};

const char* to_string(MitlOp op);

/// Immutable MITL formula. Copies share structure; equality is structural.
class Formula {
public:
  struct Node {
    MitlOp op;
    std::string name;
    TimeInterval interval;
    std::vector<Formula> children;
    std::size_t hash;
  };

  Formula() = default;

  MitlOp op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  const TimeInterval& interval() const { return node_->interval; }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i = 0) const { return node_->children.at(i); }
  std::size_t hash() const { return node_->hash; }
  bool valid() const { return static_cast<bool>(node_); }

  bool isTemporal() const;
  bool isPast() const { return op() == MitlOp::Since || op() == MitlOp::PastEventually; }

  /// Parseable concrete syntax.
  std::string str() const;

  /// Number of nodes in the syntax tree (shared subtrees counted once per occurrence).
  std::size_t size() const;
  std::size_t depth() const;
  /// Largest finite interval endpoint occurring in the formula.
  std::uint64_t maxConstant() const;

  friend bool operator==(const Formula& a, const Formula& b);

  static Formula make(MitlOp op, std::string name, TimeInterval interval, std::vector<Formula> children);

private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

Formula prop(std::string name);
Formula top();
Formula bottom();
Formula lnot(Formula f);
Formula land(Formula a, Formula b);
Formula lor(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula until(Formula a, Formula b, TimeInterval i);
Formula since(Formula a, Formula b, TimeInterval i);
Formula eventually(Formula a, TimeInterval i);
Formula globally(Formula a, TimeInterval i);
Formula past(Formula a, TimeInterval i);

/// (0, +inf), the interval of the primitive untimed until/since.
TimeInterval strict_future();

} // namespace mitl
