#pragma once

#include <gtest/gtest.h>

#include "sysalg/error.hpp"

// Expects stmt to throw sysalg::Error with the given code.
#define EXPECT_ERROR_CODE(stmt, expected_code)                                 \
  do {                                                                         \
    try {                                                                      \
      stmt;                                                                    \
      ADD_FAILURE() << "no error from: " #stmt;                                \
    } catch (const sysalg::Error& e_) {                                        \
      EXPECT_EQ(sysalg::code_name(e_.code()), sysalg::code_name(expected_code)) \
          << e_.what();                                                        \
    }                                                                          \
  } while (0)
