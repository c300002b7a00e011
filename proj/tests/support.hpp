#pragma once

#include <gtest/gtest.h>

#include "z2h/error.hpp"

template <class F>
void expect_error(F&& f, z2h::ErrorCode code) {
  try {
    f();
    ADD_FAILURE() << "expected " << z2h::to_string(code);
  } catch (const z2h::Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}
