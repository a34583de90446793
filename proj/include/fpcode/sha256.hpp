// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace fpcode {

// Lowercase hex SHA-256 digest of a byte string.
std::string sha256_hex(std::string_view data);

}  // namespace fpcode
