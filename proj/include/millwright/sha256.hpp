#ifndef MILLWRIGHT_SHA256_HPP
#define MILLWRIGHT_SHA256_HPP

#include <string>
#include <string_view>

namespace millwright {

// Hex-encoded SHA-256 digest of the bytes.
std::string sha256_hex(std::string_view data);

} // namespace millwright

#endif
