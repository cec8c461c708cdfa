#include <doctest.h>

#include <stdexcept>
#include <string>

#include "acihs/batch.hpp"
#include "acihs/rng.hpp"

using namespace acihs;

TEST_CASE("serial and parallel batches agree bitwise") {
  const auto trial = [](std::size_t k) {
    Rng rng(9, k);
    double acc = 0.0;
    for (int i = 0; i < 1000; ++i) acc += rng.normal() * rng.uniform();
    return acc;
  };
  const auto a = batch::run_serial(64, trial);
  for (const int threads : {1, 2, 4}) CHECK(batch::run_parallel(64, trial, threads) == a);
  CHECK(batch::run(64, trial, 3) == a);
}

TEST_CASE("the lowest failing trial wins") {
  const auto trial = [](std::size_t k) -> int {
    if (k == 5 || k == 40) throw std::runtime_error("trial " + std::to_string(k));
    return static_cast<int>(k);
  };
  for (const int threads : {1, 4}) {
    try {
      batch::run_parallel(64, trial, threads);
      FAIL("no exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "trial 5");
    }
  }
  CHECK(batch::run_serial(0, trial).empty());
}
