#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "qnio/bytes.hpp"

namespace qnio {

inline constexpr std::uint32_t kEnvelopeVersion = 1;

enum class ArtifactType : std::uint32_t {
  CvqcParams = 1,
  CvqcVerifyKey = 2,
  CvqcProof = 3,
  HashedProof = 4,
  NullObfuscation = 5,
  WeCiphertext = 6,
  NizkCrs = 7,
  NizkProof = 8,
  ZaprCrs = 9,
  ZaprProof = 10,
  AbePublicKey = 11,
  AbeMasterKey = 12,
  AbeUserKey = 13,
  AbeCiphertext = 14,
  CprfPublic = 15,
  CprfKey = 16,
  KpUserKey = 17,
  Share = 18,
  PeCiphertext = 19,
  NizkEscrow = 20,
  Statement = 21,
  VerifierSpec = 22,
};

struct Envelope {
  ArtifactType type = ArtifactType::Statement;
  std::uint32_t version = kEnvelopeVersion;
  Bytes payload;
};

// "QNK1" | u32 version | u32 type | u32 length | payload | SHA-256 of everything before it.
Bytes wrap_envelope(ArtifactType type, ByteView payload);
Envelope open_envelope(ByteView data);
Bytes open_envelope(ByteView data, ArtifactType expected);

std::string_view artifact_name(ArtifactType type);

}  // namespace qnio
