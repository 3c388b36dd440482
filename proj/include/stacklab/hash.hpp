#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace stacklab {

std::array<std::uint8_t, 32> sha256(std::string_view data);

/// Lower-case hex of the first `digits` nibbles of SHA-256(data).
std::string sha256_hex(std::string_view data, std::size_t digits = 64);

}  // namespace stacklab
