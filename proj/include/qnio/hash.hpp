#pragma once

#include "qnio/bytes.hpp"

namespace qnio {

// SHA-256 and HMAC-SHA-256 (OpenSSL). Every keyed primitive in the library is
// built on these two calls.
Digest sha256(ByteView data);
Digest hmac_sha256(ByteView key, ByteView data);

inline Bytes to_bytes(const Digest& d) { return Bytes(d.begin(), d.end()); }
inline Bytes to_bytes(const Key16& k) { return Bytes(k.begin(), k.end()); }
Key16 truncate16(const Digest& d);

}  // namespace qnio
