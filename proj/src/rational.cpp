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
#include "pacr/rational.hpp"

#include <stdexcept>

namespace pacr {

Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string str(text);
  auto slash = str.find('/');
  if (slash == std::string::npos) {
    if (!is_int(str)) throw std::invalid_argument("bad rational: " + str);
    return Rational(boost::multiprecision::cpp_int(str));
  }
  std::string num = str.substr(0, slash);
  std::string den = str.substr(slash + 1);
  if (!is_int(num) || !is_int(den))
    throw std::invalid_argument("bad rational: " + str);
  boost::multiprecision::cpp_int d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + str);
  return Rational(boost::multiprecision::cpp_int(num), d);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace pacr
