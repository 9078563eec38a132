#pragma once

#include <cstdint>
#include <vector>

namespace cfm {

// Element values are only ever compared with <, ==, >; no arithmetic is
// performed on them. Signed 64-bit keeps the order total.
using Value = std::int64_t;

using Sequence = std::vector<Value>;

} // namespace cfm
