#pragma once

#include <algorithm>
#include <cmath>

namespace rsv::detail {

// log of a sum of positive terms given by their logs
inline double log_sum(double la, double lb) {
  if (la < lb) std::swap(la, lb);
  if (lb == -INFINITY) return la;
  return la + std::log1p(std::exp(lb - la));
}

inline double log_sum(double la, double lb, double lc) { return log_sum(log_sum(la, lb), lc); }

// log|v|, with log 0 = -inf
inline double log_abs(double v) { return std::log(std::abs(v)); }

// log(1 + a^2 + b^2) without overflow
inline double log1_sumsq(double a, double b) {
  const double m = std::max({1.0, std::abs(a), std::abs(b)});
  if (m < 1e150) return std::log1p(a * a + b * b);
  const double ia = a / m, ib = b / m, i1 = 1.0 / m;
  return 2.0 * std::log(m) + std::log(i1 * i1 + ia * ia + ib * ib);
}

// log(1 + v) for v >= 0 that may have overflowed; lv = log v is the fallback
inline double log1p_pos(double v, double lv) {
  if (std::isfinite(v) && v < 1e300) return std::log1p(v);
  return lv + std::log1p(std::exp(-lv));
}

}  // namespace rsv::detail
