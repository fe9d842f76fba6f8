#pragma once

#include <cstdint>

namespace zipstrata {

struct Budget {
  std::uint64_t max_elements = 10'000'000;
  std::uint64_t max_actions = 100'000'000;
};

}  // namespace zipstrata
