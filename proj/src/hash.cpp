#include "stacklab/hash.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace stacklab {

std::array<std::uint8_t, 32> sha256(std::string_view data) {
  std::array<std::uint8_t, 32> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1 || length != 32) {
    throw std::runtime_error("sha256: digest failed");
  }
  return digest;
}

std::string sha256_hex(std::string_view data, std::size_t digits) {
  static constexpr char kHex[] = "0123456789abcdef";
  const auto digest = sha256(data);
  std::string out;
  out.reserve(digits);
  for (std::size_t i = 0; i < digits && i < 64; ++i) {
    const std::uint8_t byte = digest[i / 2];
    out.push_back(kHex[i % 2 == 0 ? byte >> 4 : byte & 0xf]);
  }
  return out;
}

}  // namespace stacklab
