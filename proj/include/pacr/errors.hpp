/*
 * Copyright 2026 The pacr authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace pacr {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input (automaton fixture or process description).
struct ParseError : Error {
  ParseError(const std::string& what, int line)
      : Error("parse error (line " + std::to_string(line) + "): " + what),
        line(line) {}
  int line;
};

// A distribution or relation refers to states outside the carrier set.
struct CarrierMismatchError : Error {
  using Error::Error;
};

// A probability value outside [0,1], or a distribution whose mass is not 1.
struct InvalidProbabilityError : Error {
  using Error::Error;
};

// A summand produced a probability bundle whose weights do not sum to one.
struct IllFormedSummandError : Error {
  using Error::Error;
};

// A designated transition set contains a non-internal or non-Dirac member.
struct InvalidConfluentSetError : Error {
  using Error::Error;
};

// No representation map exists for the given transition set.
struct NoRepresentationMapError : Error {
  using Error::Error;
};

// A scheduler's reachable choice domain is not finitely enumerable.
struct NotFinitelyEnumerableError : Error {
  using Error::Error;
};

// A configured resource cap (state count, enumeration bound) was exceeded.
struct ResourceCapError : Error {
  using Error::Error;
};

}  // namespace pacr
