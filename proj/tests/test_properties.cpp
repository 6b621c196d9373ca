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
#include "doctest.h"
#include "support.hpp"

TEST_CASE("confluence properties hold on a large random automaton corpus") {
  auto res = pacr_test::run_confluence_properties(520);
  CHECK(res.cases == 520);
  CHECK(res.checks > 1000);
  CHECK(res.violations == 0);
  if (res.violations) MESSAGE(res.first_violation);
}
