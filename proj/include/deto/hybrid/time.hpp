#pragma once

namespace deto {

/// A point (t, j) of a hybrid time domain: continuous time in seconds and
/// the jump counter. Both are nondecreasing along any trace.
struct HybridTime {
  double t = 0.0;
  long j = 0;

  friend bool operator==(const HybridTime& a, const HybridTime& b) {
    return a.t == b.t && a.j == b.j;
  }
  /// Lexicographic order used for "(t,j) precedes (t',j')".
  friend bool operator<(const HybridTime& a, const HybridTime& b) {
    return a.t < b.t || (a.t == b.t && a.j < b.j);
  }
  friend bool operator<=(const HybridTime& a, const HybridTime& b) {
    return a == b || a < b;
  }
};

}  // namespace deto
