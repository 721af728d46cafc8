#pragma once

// Brute-force MITL evaluation on a half-step grid. Every breakpoint of the
// signal and every truth change of a subformula lies on a multiple of h, so
// index 2k stands for the instant k*h and index 2k+1 for the open cell
// (k*h, (k+1)*h). Values past the horizon wrap by the signal period.

#include "mitl/formula.hpp"
#include "mitl/signal.hpp"

#include <unordered_map>
#include <vector>

namespace mitl::testing {

class GridEval {
public:
  /// Instants with denominator dividing `minDen` are always on the grid.
  GridEval(const Signal& s, const Formula& f, long minDen = 2) : sig_(s) {
    mpz_class den = s.period().get_den();
    mpz_lcm_ui(den.get_mpz_t(), den.get_mpz_t(), minDen);
    for (const auto& b : s.breakpoints()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), b.t.get_den_mpz_t());
    scale_ = Rational(den) * 2;
    const Rational tail = s.tailStartTime();
    Rational horizon = tail + (Rational(f.depth()) + 3) * (s.period() + f.maxConstant() + 1) * 2;
    periodIdx_ = idx(s.period());
    // Horizon must sit a whole number of periods past the tail.
    Rational m = (horizon - tail) / s.period();
    mpz_class whole;
    mpz_cdiv_q(whole.get_mpz_t(), m.get_num_mpz_t(), m.get_den_mpz_t());
    n_ = idx(tail + Rational(whole) * s.period());
    root_ = f;
  }

  /// Value at time t (t must lie on the half grid and within the horizon).
  bool at(const Rational& t) { return values(root_)[idx(t)]; }
  bool at(const Formula& g, const Rational& t) { return values(g)[idx(t)]; }

  const std::vector<char>& values(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    auto v = compute(f);
    return memo_.emplace(f, std::move(v)).first->second;
  }

private:
  long idx(const Rational& t) const {
    Rational q = t * scale_;
    return q.get_num().get_si() / q.get_den().get_si();
  }

  Rational time(long i) const { return Rational(i) / scale_; }

  bool get(const std::vector<char>& v, long i) const {
    while (i > n_) i -= periodIdx_;
    return v[i];
  }

  std::vector<char> compute(const Formula& f) {
    std::vector<char> out(n_ + 1);
    switch (f.op()) {
    case MitlOp::Prop:
      for (long i = 0; i <= n_; ++i) out[i] = sig_.holds(f.name(), time(i));
      return out;
    case MitlOp::True:
      std::fill(out.begin(), out.end(), 1);
      return out;
    case MitlOp::Not: {
      const auto& c = values(f.child());
      for (long i = 0; i <= n_; ++i) out[i] = !c[i];
      return out;
    }
    case MitlOp::And: {
      const auto& a = values(f.child(0));
      const auto& b = values(f.child(1));
      for (long i = 0; i <= n_; ++i) out[i] = a[i] && b[i];
      return out;
    }
    case MitlOp::Until:
    case MitlOp::Eventually:
    case MitlOp::Globally: {
      if (f.op() == MitlOp::Globally) {
        const auto& v = values(eventually(lnot(f.child()), f.interval()));
        for (long i = 0; i <= n_; ++i) out[i] = !v[i];
        return out;
      }
      std::vector<char> ones(n_ + 1, 1);
      const auto& g = f.op() == MitlOp::Until ? values(f.child(0)) : ones;
      const auto& p = values(f.op() == MitlOp::Until ? f.child(1) : f.child(0));
      const auto& iv = f.interval();
      const long A = idx(iv.lower());
      for (long j = 0; j <= n_; ++j) {
        const long B = iv.upper() ? j + idx(*iv.upper()) : std::max(j + A, n_) + 2 * periodIdx_ + 2;
        long first = j + A, last = B;
        if (first % 2 == 0 && iv.lowerOpen()) ++first;
        if (last % 2 == 0 && iv.upperOpen() && iv.upper()) --last;
        // g must hold on every region strictly inside (t, t').
        long k = j % 2 ? j : j + 1;
        bool gOk = true, found = false;
        if (A == 0 && !iv.lowerOpen() && get(p, j)) {
          out[j] = true;
          continue;
        }
        for (long i = first; i <= last && !found; ++i) {
          const long hi = i % 2 ? i : i - 1;
          while (gOk && k <= hi) gOk = get(g, k++);
          if (!gOk) break;
          found = get(p, i);
        }
        out[j] = found;
      }
      return out;
    }
    case MitlOp::Since:
    case MitlOp::PastEventually: {
      std::vector<char> ones(n_ + 1, 1);
      const auto& g = f.op() == MitlOp::Since ? values(f.child(0)) : ones;
      const auto& p = values(f.op() == MitlOp::Since ? f.child(1) : f.child(0));
      const auto& iv = f.interval();
      const long A = idx(iv.lower());
      for (long j = 0; j <= n_; ++j) {
        long first = j - A, last = iv.upper() ? j - idx(*iv.upper()) : 0;
        if (first % 2 == 0 && iv.lowerOpen()) --first;
        if (iv.upper() && last % 2 == 0 && iv.upperOpen()) ++last;
        last = std::max(last, 0L);
        long k = j % 2 ? j : j - 1;
        bool gOk = true, found = false;
        if (A == 0 && !iv.lowerOpen() && p[j]) {
          out[j] = true;
          continue;
        }
        for (long i = first; i >= last && !found; --i) {
          const long lo = i % 2 ? i : i + 1;
          while (gOk && k >= lo) gOk = g[k--];
          if (!gOk) break;
          found = p[i];
        }
        out[j] = found;
      }
      return out;
    }
    }
    return out;
  }

  const Signal& sig_;
  Formula root_;
  Rational scale_;
  long periodIdx_ = 0;
  long n_ = 0;
  std::unordered_map<Formula, std::vector<char>, FormulaHash> memo_;
};

} // namespace mitl::testing
