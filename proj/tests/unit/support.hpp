#pragma once

#include <gtest/gtest.h>

#include "monge/errors.hpp"

template <class F>
monge::ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const monge::GeometryError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a GeometryError";
  return monge::ErrorKind::InvalidInput;
}
