// shared helpers for the unit tests
#pragma once

#include "zetabessel/precision.hpp"

#include "doctest.h"

#include <string>

namespace zbt {

using zb::hp;

inline hp rel_err(const hp& got, const hp& want) {
    hp d = abs(got - want);
    return want == 0 ? d : d / abs(want);
}

// CHECK that got matches want to 10^exp relative
#define CHECK_REL(got, want, exp10)                                                          \
    do {                                                                                     \
        zb::hp zbt_e_ = zbt::rel_err((got), (want));                                         \
        INFO("rel err = " << zb::to_decimal(zbt_e_, 6));                                     \
        CHECK(zbt_e_ <= zb::pow10(exp10));                                                   \
    } while (0)

}  // namespace zbt
