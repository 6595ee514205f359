#include "rsverify/report.hpp"

#include <algorithm>

namespace rsv {

void fill_errors(IdentityReport& r) {
  r.abs_err = std::abs(r.lhs - r.rhs);
  const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
  r.rel_err = scale > 0.0 ? r.abs_err / scale : r.abs_err;
}

}  // namespace rsv
