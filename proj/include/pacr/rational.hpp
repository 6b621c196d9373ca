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

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace pacr {

// Exact rational arithmetic. All probability computations in the library go
// through this type; no floating point is used anywhere in the semantics.
using Rational = boost::multiprecision::cpp_rational;

// Parses "p", "-p" or "p/q" (q > 0 after normalisation). Throws
// std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

// Renders as "p" (denominator one) or "p/q".
std::string to_string(const Rational& r);

}  // namespace pacr
