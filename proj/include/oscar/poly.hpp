// poly.hpp — normal-ordered operator polynomials with oscillating phase labels
#pragma once

#include <oscar/coeff.hpp>
#include <oscar/modes.hpp>

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace oscar::algebra {

// Support restriction of the symbolic bath frequency w: either the slice near
// a system frequency ("region(wc)") or its complement ("region(!wc)"). A term
// without a tag carries the full bath sum (or no bath operator at all).
struct RegionTag {
  FreqExpr freq;
  bool complement = false;

  friend bool operator==(const RegionTag& a, const RegionTag& b) {
    return a.freq == b.freq && a.complement == b.complement;
  }
  friend bool operator!=(const RegionTag& a, const RegionTag& b) { return !(a == b); }
  friend bool operator<(const RegionTag& a, const RegionTag& b) {
    if (a.freq != b.freq) return a.freq < b.freq;
    return a.complement < b.complement;
  }
};

inline RegionTag region_in(const FreqExpr& f) { return {f, false}; }
inline RegionTag region_out(const FreqExpr& f) { return {f, true}; }

// One normal-ordered term: coeff × (ordered ladder operators) × e^{i·phase·t}.
struct NormalTerm {
  CoeffSum coeff;
  std::vector<LadderOp> ops;
  FreqExpr phase;
  std::optional<RegionTag> region;
};

namespace detail {

// Merge key: everything but the coefficient.
struct TermKey {
  std::vector<LadderOp> ops;
  FreqExpr phase;
  std::optional<RegionTag> region;

  friend bool operator<(const TermKey& a, const TermKey& b) {
    auto op_tuple = [](const LadderOp& o) {
      return std::make_tuple(static_cast<int>(o.mode.kind), o.mode.label, !o.dagger);
    };
    if (a.ops.size() != b.ops.size()) return a.ops.size() < b.ops.size();
    for (std::size_t i = 0; i < a.ops.size(); ++i) {
      const auto ta = op_tuple(a.ops[i]), tb = op_tuple(b.ops[i]);
      if (ta != tb) return ta < tb;
    }
    if (a.phase != b.phase) return a.phase < b.phase;
    if (a.region.has_value() != b.region.has_value()) return !a.region.has_value();
    if (!a.region) return false;
    return *a.region < *b.region;
  }
};

using TermMap = std::map<TermKey, CoeffSum>;

// True if op a must sort strictly after op b in the canonical sequence.
inline bool out_of_order(const LadderOp& a, const LadderOp& b) {
  if (a.mode != b.mode) return b.mode < a.mode;
  return !a.dagger && b.dagger;  // annihilator left of creator within one mode
}

// Rewrite one raw (unordered) term into normal-ordered form, accumulating into
// the map. Adjacent transpositions: distinct modes commute freely; within one
// mode, a·a⁺ = a⁺a + 1 branches into the swapped term plus the contracted one.
inline void normal_order_into(TermMap& acc, NormalTerm t) {
  std::vector<NormalTerm> work;
  work.push_back(std::move(t));
  while (!work.empty()) {
    NormalTerm cur = std::move(work.back());
    work.pop_back();
    bool branched = false;
    std::size_t i = 0;
    while (i + 1 < cur.ops.size()) {
      LadderOp& x = cur.ops[i];
      LadderOp& y = cur.ops[i + 1];
      if (x.mode == y.mode && !x.dagger && y.dagger) {
        NormalTerm swapped = cur;
        std::swap(swapped.ops[i], swapped.ops[i + 1]);
        NormalTerm contracted = cur;
        contracted.ops.erase(contracted.ops.begin() + i, contracted.ops.begin() + i + 2);
        work.push_back(std::move(swapped));
        work.push_back(std::move(contracted));
        branched = true;
        break;
      }
      if (out_of_order(x, y)) {
        std::swap(x, y);
        if (i > 0) --i;
        continue;
      }
      ++i;
    }
    if (branched) continue;
    TermKey key{cur.ops, cur.phase, cur.region};
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(std::move(key), std::move(cur.coeff));
    else
      it->second += cur.coeff;
  }
}

// Recombine tagged slices within each (ops, phase) group so that exact region
// decompositions cancel structurally:
//   untagged U + in(R)(−U)  →  out(R) U      (full minus slice = complement)
//   untagged U + out(R)(−U) →  in(R) U
//   in(R) X  + out(R) X     →  untagged X    (slice plus complement = full)
inline void normalize_regions(TermMap& acc) {
  auto group_begin = acc.begin();
  while (group_begin != acc.end()) {
    auto group_end = group_begin;
    while (group_end != acc.end() && group_end->first.ops == group_begin->first.ops &&
           group_end->first.phase == group_begin->first.phase)
      ++group_end;

    bool changed = true;
    for (int pass = 0; pass < 8 && changed; ++pass) {
      changed = false;
      for (auto a = group_begin; a != group_end && !changed; ++a) {
        if (a->second.structurally_zero()) continue;
        for (auto b = std::next(a); b != group_end && !changed; ++b) {
          if (b->second.structurally_zero()) continue;
          const auto &ra = a->first.region, &rb = b->first.region;
          std::optional<RegionTag> merged;
          CoeffSum coeff;
          if (!ra && rb && (a->second + b->second).structurally_zero()) {
            merged = RegionTag{rb->freq, !rb->complement};
            coeff = a->second;
          } else if (ra && rb && ra->freq == rb->freq &&
                     ra->complement != rb->complement &&
                     (a->second - b->second).structurally_zero()) {
            merged = std::nullopt;
            coeff = a->second;
          } else {
            continue;
          }
          a->second = CoeffSum();
          b->second = CoeffSum();
          TermKey key{group_begin->first.ops, group_begin->first.phase, merged};
          auto it = acc.find(key);
          if (it == acc.end()) {
            // Insertion stays inside this group (same ops/phase prefix), so the
            // group iterators remain valid bounds after re-finding them.
            acc.emplace(std::move(key), std::move(coeff));
            group_begin = acc.lower_bound(
                TermKey{group_begin->first.ops, group_begin->first.phase, std::nullopt});
            group_end = group_begin;
            while (group_end != acc.end() &&
                   group_end->first.ops == group_begin->first.ops &&
                   group_end->first.phase == group_begin->first.phase)
              ++group_end;
          } else {
            it->second += coeff;
          }
          changed = true;
        }
      }
    }
    group_begin = group_end;
  }
}

}  // namespace detail

// Fully merged list of normal-ordered terms; no zero coefficients, no
// duplicate (ops, phase, region) keys; deterministic term order.
class OperatorPoly {
 public:
  OperatorPoly() = default;

  static OperatorPoly zero() { return {}; }

  // Build from a single (possibly unordered) term.
  static OperatorPoly from_term(CoeffSum coeff, std::vector<LadderOp> ops,
                                FreqExpr phase = FreqExpr::zero(),
                                std::optional<RegionTag> region = std::nullopt) {
    detail::TermMap acc;
    detail::normal_order_into(acc, {std::move(coeff), std::move(ops), phase, std::move(region)});
    return from_map(acc);
  }

  static OperatorPoly scalar(CoeffSum coeff, FreqExpr phase = FreqExpr::zero()) {
    return from_term(std::move(coeff), {}, phase);
  }

  const std::vector<NormalTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  friend OperatorPoly operator+(const OperatorPoly& a, const OperatorPoly& b) {
    detail::TermMap acc;
    for (const auto& t : a.terms_) detail::normal_order_into(acc, t);
    for (const auto& t : b.terms_) detail::normal_order_into(acc, t);
    return from_map(acc);
  }
  friend OperatorPoly operator-(const OperatorPoly& a, const OperatorPoly& b) {
    return a + b.scaled(CoeffSum(Rational(-1)));
  }

  OperatorPoly scaled(const CoeffSum& s) const {
    OperatorPoly out = *this;
    for (auto& t : out.terms_) t.coeff = t.coeff * s;
    out.drop_structural_zeros();
    return out;
  }

  // Remove terms whose coefficients vanish under randomized evaluation.
  OperatorPoly pruned(EvalContext& ctx = default_eval_context()) const {
    OperatorPoly out;
    for (const auto& t : terms_)
      if (!t.coeff.is_zero(ctx)) out.terms_.push_back(t);
    return out;
  }

  static OperatorPoly from_map(detail::TermMap& acc) {
    detail::normalize_regions(acc);
    OperatorPoly out;
    for (const auto& [key, coeff] : acc) {
      if (coeff.structurally_zero()) continue;
      out.terms_.push_back({coeff, key.ops, key.phase, key.region});
    }
    return out;
  }

 private:
  void drop_structural_zeros() {
    std::vector<NormalTerm> kept;
    for (auto& t : terms_)
      if (!t.coeff.structurally_zero()) kept.push_back(std::move(t));
    terms_ = std::move(kept);
  }

  std::vector<NormalTerm> terms_;
};

// Re-normal-order a term that may be given out of order.
inline OperatorPoly normal_order(const NormalTerm& t) {
  return OperatorPoly::from_term(t.coeff, t.ops, t.phase, t.region);
}

namespace detail {
// Intersection of bath-support restrictions carried by two factors.
inline std::optional<RegionTag> combine_regions(const std::optional<RegionTag>& a,
                                                const std::optional<RegionTag>& b) {
  if (!a) return b;
  if (!b) return a;
  if (*a == *b) return a;
  if (a->freq == b->freq)  // in(R) ∧ out(R): empty support
    throw DerivationError("multiply: contradictory spectral-region tags");
  if (!a->complement && !b->complement)  // in(R1) ∧ in(R2), R1 ≠ R2
    throw DerivationError("multiply: conflicting spectral-region tags");
  if (!a->complement) return a;  // in(R1) ∧ out(R2) ≈ in(R1) for disjoint regions
  if (!b->complement) return b;
  throw DerivationError("multiply: unsupported double-complement region tags");
}
}  // namespace detail

// Product: distributes, concatenates op lists, adds phases, normal-orders and
// merges. Spectral-region tags intersect.
inline OperatorPoly multiply(const OperatorPoly& a, const OperatorPoly& b,
                             EvalContext& ctx = default_eval_context()) {
  detail::TermMap acc;
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) {
      NormalTerm t;
      t.coeff = ta.coeff * tb.coeff;
      t.ops = ta.ops;
      t.ops.insert(t.ops.end(), tb.ops.begin(), tb.ops.end());
      t.phase = ta.phase + tb.phase;
      t.region = detail::combine_regions(ta.region, tb.region);
      detail::normal_order_into(acc, std::move(t));
    }
  return OperatorPoly::from_map(acc).pruned(ctx);
}

inline OperatorPoly commutator(const OperatorPoly& a, const OperatorPoly& b,
                               EvalContext& ctx = default_eval_context()) {
  return (multiply(a, b, ctx) - multiply(b, a, ctx)).pruned(ctx);
}

// Formal Hermitian conjugate: ops reversed and dagger-flipped, coefficients
// conjugated, phases negated; spectral-region tags are kept (they restrict the
// bath support, which conjugation does not change).
inline OperatorPoly adjoint(const OperatorPoly& a) {
  detail::TermMap acc;
  for (const auto& t : a.terms()) {
    NormalTerm out;
    out.coeff = t.coeff.conj();
    out.ops.reserve(t.ops.size());
    for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it)
      out.ops.push_back({it->mode, !it->dagger});
    out.phase = -t.phase;
    out.region = t.region;
    detail::normal_order_into(acc, std::move(out));
  }
  return OperatorPoly::from_map(acc);
}

inline bool poly_equal(const OperatorPoly& a, const OperatorPoly& b,
                       EvalContext& ctx = default_eval_context()) {
  return (a - b).pruned(ctx).empty();
}

inline bool is_hermitian(const OperatorPoly& a, EvalContext& ctx = default_eval_context()) {
  return poly_equal(a, adjoint(a), ctx);
}

// Coefficient lookup for (ops, phase, region); null if the term is absent.
inline const CoeffSum* find_coeff(const OperatorPoly& p, const std::vector<LadderOp>& ops,
                                  const FreqExpr& phase,
                                  const std::optional<RegionTag>& region = std::nullopt) {
  for (const auto& t : p.terms())
    if (t.ops == ops && t.phase == phase && t.region == region) return &t.coeff;
  return nullptr;
}

}  // namespace oscar::algebra
