#pragma once

#include "ewe/core.hpp"

// Recurring hand-checked instances. Names describe the word equation; the
// comment on each states the properties the tests rely on.
namespace fx {

using ewe::Boundary;
using ewe::ExtendedWordEquation;
using ewe::require_ewe;

inline Boundary B(int s, int j) { return Boundary{s, j}; }

// Z < X < ZW < XX < XXY ~ ZWZ. Staggered, coherent, cyclic cut graph; head of
// side 1 ranks above head of side 2, so the split-first-variable step applies.
inline ExtendedWordEquation xxy_zwz() {
  return require_ewe({"X", "X", "Y"}, {"Z", "W", "Z"},
                     {{B(2, 1)}, {B(1, 1)}, {B(2, 2)}, {B(1, 2)}, {B(1, 3), B(2, 3)}});
}

// Same equation with the heads tied: the identify-heads step applies.
inline ExtendedWordEquation xxy_zwz_heads_tied() {
  return require_ewe({"X", "X", "Y"}, {"Z", "W", "Z"},
                     {{B(1, 1), B(2, 1)}, {B(1, 2)}, {B(2, 2)}, {B(1, 3), B(2, 3)}});
}

// Image of xxy_zwz_heads_tied under the identify-heads transformation.
inline ExtendedWordEquation xy_wx_shifted() {
  return require_ewe({"X", "Y"}, {"W", "X"}, {{B(1, 1)}, {B(2, 1)}, {B(1, 2), B(2, 2)}});
}

// Incoherent: the two Y instances are forced to different lengths.
inline ExtendedWordEquation xyz_wyv() {
  return require_ewe({"X", "Y", "Z"}, {"W", "Y", "V"},
                     {{B(1, 1)}, {B(2, 1)}, {B(2, 2)}, {B(1, 2)}, {B(1, 3), B(2, 3)}});
}

// Heads tied, repeated variables: terminating although the cut graph cycles.
inline ExtendedWordEquation xx_yy() {
  return require_ewe({"X", "X"}, {"Y", "Y"}, {{B(1, 1), B(2, 1)}, {B(1, 2), B(2, 2)}});
}

// No repeated variables: acyclic cut graph, every fecundity 1.
inline ExtendedWordEquation xy_zw() {
  return require_ewe({"X", "Y"}, {"Z", "W"}, {{B(2, 1)}, {B(1, 1)}, {B(1, 2), B(2, 2)}});
}

// Z < X < XY ~ ZX: maps to itself under the split step — a one-state cycle.
// Staggered, coherent, cyclic cut graph, and hereditarily staggered.
inline ExtendedWordEquation xy_zx_head_high() {
  return require_ewe({"X", "Y"}, {"Z", "X"}, {{B(2, 1)}, {B(1, 1)}, {B(1, 2), B(2, 2)}});
}

// X < Z < XY ~ ZX: same equation, heads ordered the other way; acyclic.
inline ExtendedWordEquation xy_zx_head_low() {
  return require_ewe({"X", "Y"}, {"Z", "X"}, {{B(1, 1)}, {B(2, 1)}, {B(1, 2), B(2, 2)}});
}

// Staggered and coherent with a cyclic cut graph, but every coherent
// transformation leaves the staggered world; still terminating.
inline ExtendedWordEquation xxy_yzz() {
  return require_ewe({"X", "X", "Y"}, {"Y", "Z", "Z"},
                     {{B(2, 1)}, {B(1, 1)}, {B(2, 2)}, {B(1, 2)}, {B(1, 3), B(2, 3)}});
}

inline ExtendedWordEquation trivial() { return require_ewe({}, {}, {}); }

// The three successors of xxy_zwz: (XZXY, WZ) with (1,2) below / tied with /
// above (2,1).
inline ExtendedWordEquation xzxy_wz_below() {
  return require_ewe({"X", "Z", "X", "Y"}, {"W", "Z"},
                     {{B(1, 1)}, {B(1, 2)}, {B(2, 1)}, {B(1, 3)}, {B(1, 4), B(2, 2)}});
}
inline ExtendedWordEquation xzxy_wz_equal() {
  return require_ewe({"X", "Z", "X", "Y"}, {"W", "Z"},
                     {{B(1, 1)}, {B(1, 2), B(2, 1)}, {B(1, 3)}, {B(1, 4), B(2, 2)}});
}
inline ExtendedWordEquation xzxy_wz_above() {
  return require_ewe({"X", "Z", "X", "Y"}, {"W", "Z"},
                     {{B(1, 1)}, {B(2, 1)}, {B(1, 2)}, {B(1, 3)}, {B(1, 4), B(2, 2)}});
}

}  // namespace fx
