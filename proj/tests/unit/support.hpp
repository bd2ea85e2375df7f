#pragma once

#include <cmath>

#include "doctest.h"
#include "nullgeo/mink.hpp"

namespace testing {

inline void check_vec(const nullgeo::MinkVec& got, const nullgeo::MinkVec& want, double tol) {
  REQUIRE(got.dim() == want.dim());
  for (int i = 0; i < got.dim(); ++i) {
    INFO("component ", i, " got ", got.str(), " want ", want.str());
    CHECK(std::abs(got[i] - want[i]) <= tol);
  }
}

// Equality up to an overall sign.
inline void check_vec_up_to_sign(const nullgeo::MinkVec& got, const nullgeo::MinkVec& want, double tol) {
  REQUIRE(got.dim() == want.dim());
  double plus = 0.0, minus = 0.0;
  for (int i = 0; i < got.dim(); ++i) {
    plus = std::max(plus, std::abs(got[i] - want[i]));
    minus = std::max(minus, std::abs(got[i] + want[i]));
  }
  INFO("got ", got.str(), " want +-", want.str());
  CHECK(std::min(plus, minus) <= tol);
}

}  // namespace testing
