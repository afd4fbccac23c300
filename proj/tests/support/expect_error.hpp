#pragma once

#include <gtest/gtest.h>

#include "dphg/error.hpp"

// EXPECT_THROW only checks the type; these also check the ErrorCode.
#define EXPECT_DPHG_ERROR(stmt, expected_code)                                   \
  do {                                                                           \
    try {                                                                        \
      stmt;                                                                      \
      ADD_FAILURE() << "expected " << dphg::to_string(expected_code);            \
    } catch (const dphg::Error& e_) {                                            \
      EXPECT_EQ(e_.code(), expected_code) << e_.what();                          \
    }                                                                            \
  } while (false)
