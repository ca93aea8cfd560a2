#pragma once

#include "hardy/scalar.hpp"

// Explicit-instantiation lists. Floating backends need transcendental
// functions; the exact backend only gets the purely algebraic routines.
#define HARDY_FOR_FLOATS(X) \
  X(double)                 \
  X(::hardy::Float128)      \
  X(::hardy::Float256)      \
  X(::hardy::Float512)

#define HARDY_FOR_ALL(X) \
  HARDY_FOR_FLOATS(X)    \
  X(::hardy::Rational)
