#pragma once

namespace sc {

// Compensated (Kahan) accumulator for the long prelimit sums; drop-in for
// `double sum; sum += x;` loops.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double value) {
    const double y = value - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }

  double value() const { return sum; }
};

}  // namespace sc
