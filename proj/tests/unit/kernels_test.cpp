#include <doctest.h>

#include <stdexcept>

#include "parabolic/kernels.hpp"

using namespace parabolic;

TEST_SUITE("kernels") {
  TEST_CASE("collect_masks matches the serial scan") {
    for (int n : {3, 10, 14}) {
      auto keep = [](SubsetMask m) { return __builtin_popcountll(m) % 3 == 1; };
      CHECK(collect_masks(n, Exec::Serial, keep) == collect_masks(n, Exec::Parallel, keep));
    }
  }

  TEST_CASE("map_indices keeps index order") {
    auto square = [](std::size_t i) { return static_cast<long>(i * i); };
    const auto serial = map_indices<long>(1000, Exec::Serial, square);
    CHECK(serial == map_indices<long>(1000, Exec::Parallel, square));
    CHECK(serial[31] == 961);
  }

  TEST_CASE("the lowest failing index is rethrown") {
    auto fn = [](std::size_t i) -> int {
      if (i == 17 || i == 400) throw std::runtime_error(std::to_string(i));
      return 0;
    };
    for (Exec exec : {Exec::Serial, Exec::Parallel}) {
      try {
        map_indices<int>(500, exec, fn);
        FAIL("no exception");
      } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "17");
      }
    }
  }

  TEST_CASE("mask conversions") {
    CHECK(mask_to_indices(0b10110) == std::vector<int>{1, 2, 4});
    CHECK(indices_to_mask({0, 3}) == 0b1001);
  }
}
