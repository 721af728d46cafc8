#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mitl::cltloc {

/// Clocks belong to a subformula (by table index): the event pair z0/z1 and,
/// for bounded eventually with a > 0, the auxiliary clocks x^0..x^{d-1}.
struct ClockId {
  enum class Kind : std::uint8_t { Z0, Z1, Aux };

  std::uint32_t owner = 0;
  Kind kind = Kind::Z0;
  std::uint32_t index = 0;

  static ClockId z(std::uint32_t owner, int which) { return {owner, which == 0 ? Kind::Z0 : Kind::Z1, 0}; }
  static ClockId aux(std::uint32_t owner, std::uint32_t j) { return {owner, Kind::Aux, j}; }

  /// "z0_3", "z1_3", "x3_2" (owner 3, auxiliary clock 2).
  std::string name() const;

  auto operator<=>(const ClockId&) const = default;
};

enum class Rel : std::uint8_t { Lt, Le, Eq, Ge, Gt, Ne };

const char* to_string(Rel r);
Rel negate(Rel r);

/// `clock rel constant`, or `clock rel other` when `other` is set (constant unused).
struct ClockConstraint {
  ClockId clock;
  Rel rel = Rel::Eq;
  std::uint64_t constant = 0;
  std::optional<ClockId> other;

  bool operator==(const ClockConstraint&) const = default;
};

enum class Op : std::uint8_t {
  True,
  Atom,
  Constraint,
  Not,
  And,
  Or,
  Next,
  Yesterday,
  Until,
  Since,
  Release,
  Trigger,
};

const char* to_string(Op op);

/// Immutable CLTL-oc formula; structurally shared, compared structurally.
class Formula {
public:
  struct Node {
    Op op;
    std::string atom;
    ClockConstraint constraint;
    std::vector<Formula> children;
    std::size_t hash;
    std::size_t size;
  };

  Formula() = default;

  Op op() const { return node_->op; }
  const std::string& atom() const { return node_->atom; }
  const ClockConstraint& constraint() const { return node_->constraint; }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i = 0) const { return node_->children.at(i); }
  std::size_t hash() const { return node_->hash; }
  /// Tree size (shared subterms counted per occurrence, saturating).
  std::size_t size() const { return node_->size; }
  const void* identity() const { return node_.get(); }

  bool isFalse() const { return op() == Op::Not && child().op() == Op::True; }
  bool isTrue() const { return op() == Op::True; }
  /// The origin literal !Y(true).
  bool isOrigin() const { return op() == Op::Not && child().op() == Op::Yesterday && child().child().isTrue(); }

  /// Stable debug text form.
  std::string str() const;

  friend bool operator==(const Formula& a, const Formula& b);

  static Formula make(Op op, std::string atom, ClockConstraint c, std::vector<Formula> children);

private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Constructors. And/Or flatten and drop neutral elements; Not cancels double negation.
Formula top();
Formula bottom();
Formula atom(std::string name);
Formula constraint(ClockId clock, Rel rel, std::uint64_t c);
Formula constraint(ClockId clock, Rel rel, ClockId other);
Formula lnot(Formula f);
Formula land(std::vector<Formula> fs);
Formula lor(std::vector<Formula> fs);
Formula land(Formula a, Formula b);
Formula lor(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula next(Formula f);
Formula yesterday(Formula f);
Formula until(Formula a, Formula b);
Formula since(Formula a, Formula b);
Formula release(Formula a, Formula b);
Formula trigger(Formula a, Formula b);
/// G f = false R f.
Formula globally(Formula f);
/// F f = true U f.
Formula eventually(Formula f);
/// !Y(true): holds exactly at position 0.
Formula origin();

/// Negation normal form: Not remains only above atoms, true, and Y(true).
Formula nnf(const Formula& f);

/// Largest constant in any clock constraint; 0 if none.
std::uint64_t max_constant(const Formula& f);

/// Largest constant compared against each clock (clock-to-clock comparisons excluded).
std::vector<std::pair<ClockId, std::uint64_t>> clock_bounds(const Formula& f);

} // namespace mitl::cltloc
