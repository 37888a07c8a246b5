#include "qnio/hash.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <stdexcept>

namespace qnio {

namespace {
const std::uint8_t kEmpty = 0;
const std::uint8_t* ptr(ByteView v) { return v.empty() ? &kEmpty : v.data(); }
}  // namespace

Digest sha256(ByteView data) {
  Digest out;
  unsigned len = 0;
  if (EVP_Digest(ptr(data), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size())
    throw std::runtime_error("EVP_Digest failed");
  return out;
}

Digest hmac_sha256(ByteView key, ByteView data) {
  Digest out;
  unsigned len = 0;
  // OpenSSL rejects a null key pointer even for zero length.
  if (!HMAC(EVP_sha256(), ptr(key), static_cast<int>(key.size()), ptr(data), data.size(), out.data(),
            &len) ||
      len != out.size())
    throw std::runtime_error("HMAC failed");
  return out;
}

Key16 truncate16(const Digest& d) {
  Key16 k;
  std::copy(d.begin(), d.begin() + 16, k.begin());
  return k;
}

}  // namespace qnio
