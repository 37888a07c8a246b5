#pragma once

#include <cstdint>
#include <functional>

#include "qnio/bytes.hpp"
#include "qnio/primitives.hpp"
#include "qnio/qsim.hpp"

namespace qnio {

// Mock QFHE with classical keys. The public key carries a harness-sealed
// copy of the secret so that Eval can run the function "under encryption";
// nothing in the public API opens a ciphertext without the secret key.

inline constexpr unsigned kQfheMaxDepth = 8;

struct QfhePublicKey {
  Key16 key_id{};
  Bytes wrap;

  Bytes encode() const;
  static QfhePublicKey decode(ByteView data);
  friend bool operator==(const QfhePublicKey&, const QfhePublicKey&) = default;
};

struct QfheSecretKey {
  Key16 bytes{};
  friend bool operator==(const QfheSecretKey&, const QfheSecretKey&) = default;
};

struct QfheKeys {
  QfhePublicKey pk;
  QfheSecretKey sk;
};

struct QfheMetadata {
  std::size_t padded_size = 0;
  unsigned depth = 0;
  friend bool operator==(const QfheMetadata&, const QfheMetadata&) = default;
};

class QfheCiphertext {
 public:
  const Key16& key_id() const { return key_id_; }
  unsigned depth() const { return depth_; }
  QfheMetadata metadata() const { return {body_.size(), depth_}; }

  Bytes encode() const;
  static QfheCiphertext decode(ByteView data);
  friend bool operator==(const QfheCiphertext&, const QfheCiphertext&) = default;

 private:
  friend QfheCiphertext seal_payload(const Key16&, const Key16&, ByteView, unsigned);
  friend Bytes open_payload(const Key16&, const QfheCiphertext&);
  Key16 key_id_{};
  Key16 nonce_{};
  std::uint8_t depth_ = 0;
  Bytes body_;
  Key16 tag_{};
};

QfheKeys qfhe_gen(Drbg& rng);
QfheKeys qfhe_gen(std::uint64_t seed);
bool qfhe_pair(const QfhePublicKey& pk, const QfheSecretKey& sk);

QfheCiphertext qfhe_enc(const QfhePublicKey& pk, ByteView message, Drbg& rng);
Bytes qfhe_dec(const QfheSecretKey& sk, const QfheCiphertext& ct);

// Classical or sampled function of the plaintext; the seed drives any
// randomness inside it.
using QfheFunction = std::function<Bytes(ByteView plaintext, std::uint64_t seed)>;

QfheCiphertext qfhe_eval(const QfhePublicKey& pk, const QfheFunction& f, const QfheCiphertext& ct,
                         std::uint64_t seed);
// Runs the circuit on the plaintext read as an input_width-bit string and
// returns the measured output bit as one byte.
QfheCiphertext qfhe_eval(const QfhePublicKey& pk, const QuantumCircuit& c, const QfheCiphertext& ct,
                         std::uint64_t seed);

}  // namespace qnio
