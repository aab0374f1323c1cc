// modes.hpp — bosonic mode identities and ladder-operator atoms
#pragma once

#include <string>
#include <tuple>

namespace oscar::algebra {

enum class ModeKind : int { system_mode = 0, bath_mode = 1 };

// A bosonic mode. Global canonical order: system modes before bath modes,
// lexicographic by label within a kind.
struct ModeId {
  std::string label;
  ModeKind kind = ModeKind::system_mode;

  friend bool operator==(const ModeId& a, const ModeId& b) {
    return a.kind == b.kind && a.label == b.label;
  }
  friend bool operator!=(const ModeId& a, const ModeId& b) { return !(a == b); }
  friend bool operator<(const ModeId& a, const ModeId& b) {
    return std::tie(a.kind, a.label) < std::tie(b.kind, b.label);
  }
};

inline ModeId mode_c() { return {"c", ModeKind::system_mode}; }
inline ModeId mode_r() { return {"r", ModeKind::system_mode}; }
// The symbolic bath boson a_w; its frequency is the free symbol w.
inline ModeId mode_bath() { return {"a", ModeKind::bath_mode}; }

// One creation (dagger) or annihilation operator.
struct LadderOp {
  ModeId mode;
  bool dagger = false;

  friend bool operator==(const LadderOp& a, const LadderOp& b) {
    return a.mode == b.mode && a.dagger == b.dagger;
  }
  friend bool operator!=(const LadderOp& a, const LadderOp& b) { return !(a == b); }
  // Within a mode, daggered operators order (and therefore sort) first.
  friend bool operator<(const LadderOp& a, const LadderOp& b) {
    if (a.mode != b.mode) return a.mode < b.mode;
    return a.dagger && !b.dagger;
  }

  // Text form: label with trailing 't' marking the dagger, e.g. "ct", "a".
  std::string str() const { return mode.label + (dagger ? "t" : ""); }
};

inline LadderOp annihilate(const ModeId& m) { return {m, false}; }
inline LadderOp create(const ModeId& m) { return {m, true}; }

}  // namespace oscar::algebra
