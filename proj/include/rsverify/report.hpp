#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rsverify/errors.hpp"

namespace rsv {

using ParamList = std::vector<std::pair<std::string, Complex>>;

// One verification record.
struct IdentityReport {
  std::string id;
  ParamList params;
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::int64_t seed = 0;
  std::string diagnostic;  // empty unless something went wrong
};

// abs_err, rel_err = abs_err / max(|lhs|, |rhs|)
void fill_errors(IdentityReport& r);

}  // namespace rsv
