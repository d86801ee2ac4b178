#pragma once

#include <cstdint>
#include <string_view>

namespace swarm {

inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;

constexpr std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = kFnvOffset) {
    for (char c : bytes) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace swarm
