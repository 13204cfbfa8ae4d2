/*
 * Copyright 2026 the specmaj authors
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

#include <doctest.h>

#include <algorithm>

#include "specmaj/partitions.hpp"
#include "support/test_oracles.hpp"

using namespace specmaj;

TEST_CASE("box partition validation") {
  CHECK_NOTHROW(BoxPartition(2, 2, {2, 1}));
  CHECK_NOTHROW(BoxPartition(2, 2, {}));
  CHECK_NOTHROW(BoxPartition(2, 2, {1, 0}));  // trailing zeros stripped
  CHECK(BoxPartition(2, 2, {1, 0}).parts == Partition{1});
  CHECK_THROWS_AS(BoxPartition(2, 2, {3}), std::invalid_argument);
  CHECK_THROWS_AS(BoxPartition(1, 2, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(BoxPartition(2, 2, {1, 2}), std::invalid_argument);
}

TEST_CASE("littlewood-richardson base cases") {
  CHECK(lr_coefficient(Partition{1}, Partition{1}, Partition{2}) == 1);
  CHECK(lr_coefficient(Partition{1}, Partition{1}, Partition{1, 1}) == 1);
  CHECK(lr_coefficient(Partition{2}, Partition{1}, Partition{2}) == 0);   // weight
  CHECK(lr_coefficient(Partition{2, 2}, Partition{1}, Partition{3, 1, 1}) == 0);  // containment
  CHECK(lr_coefficient(Partition{}, Partition{2, 1}, Partition{2, 1}) == 1);
  CHECK(lr_coefficient(Partition{2, 1}, Partition{}, Partition{2, 1}) == 1);
  // the classical multiplicity-two example
  CHECK(lr_coefficient(Partition{2, 1}, Partition{2, 1}, Partition{3, 2, 1}) == 2);
}

TEST_CASE("littlewood-richardson is symmetric in the two factors") {
  const std::vector<Partition> ps = {{}, {1}, {2}, {1, 1}, {2, 1}, {2, 2}, {3, 1}};
  for (const auto& a : ps) {
    for (const auto& b : ps) {
      for (int w = 0; w <= 8; ++w) {
        for (const auto& nu : partitions_in_box(4, 4, w)) {
          CHECK(lr_coefficient(a, b, nu) == lr_coefficient(b, a, nu));
        }
      }
    }
  }
}

TEST_CASE("littlewood-richardson agrees with the pieri rule for single rows") {
  for (int rows = 1; rows <= 3; ++rows) {
    for (int width = 1; width <= 3; ++width) {
      for (int w = 0; w <= rows * width; ++w) {
        for (const auto& lam : partitions_in_box(rows, width, w)) {
          for (int k = 1; k <= width; ++k) {
            const auto strips = testing::pieri_row(lam, k, rows, width);
            for (int w2 = 0; w2 <= rows * width; ++w2) {
              for (const auto& nu : partitions_in_box(rows, width, w2)) {
                const auto expect =
                    std::count(strips.begin(), strips.end(), nu) > 0 ? 1 : 0;
                CHECK(lr_coefficient(lam, Partition{k}, nu) == expect);
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("partitions_in_box enumeration") {
  CHECK(partitions_in_box(2, 2, 0).size() == 1);
  CHECK(partitions_in_box(2, 2, 2).size() == 2);  // (2) and (1,1)
  CHECK(partitions_in_box(2, 2, 4).size() == 1);  // (2,2)
  CHECK(partitions_in_box(2, 2, 5).empty());
  // total count over all weights = C(rows+width, rows)
  int total = 0;
  for (int w = 0; w <= 6; ++w) total += static_cast<int>(partitions_in_box(2, 3, w).size());
  CHECK(total == 10);
}

TEST_CASE("schubert products in small grassmannians") {
  SUBCASE("projective line") {
    const BoxPartition one(1, 1, {1});
    const BoxPartition empty(1, 1, {});
    CHECK_FALSE(schubert_product_nonzero({one, one}, 1, 2));
    CHECK(schubert_product_nonzero({one, empty}, 1, 2));
    CHECK(schubert_product_nonzero({empty}, 1, 2));
  }
  SUBCASE("point class annihilates positive degree") {
    const BoxPartition point(2, 2, {2, 2});
    const BoxPartition row(2, 2, {1});
    CHECK(schubert_product_nonzero({point}, 2, 4));
    CHECK_FALSE(schubert_product_nonzero({point, row}, 2, 4));
  }
  SUBCASE("the two-plane intersection count in 4-space") {
    // sigma_1^4 = 2 sigma_(2,2): two lines meet four generic lines in 3-space
    const BoxPartition row(2, 2, {1});
    const SchubertExpansion e = schubert_product({row, row, row, row}, 2, 4);
    REQUIRE(e.size() == 1);
    CHECK(e.begin()->first == Partition{2, 2});
    CHECK(e.begin()->second == 2);
  }
}
