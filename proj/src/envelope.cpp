#include "qnio/envelope.hpp"

#include <algorithm>

#include "qnio/errors.hpp"
#include "qnio/hash.hpp"

namespace qnio {

namespace {
constexpr std::string_view kMagic = "QNK1";
constexpr std::size_t kHeader = 16;
}  // namespace

Bytes wrap_envelope(ArtifactType type, ByteView payload) {
  Writer w;
  w.raw(to_bytes(kMagic)).u32(kEnvelopeVersion).u32(static_cast<std::uint32_t>(type));
  w.u32(static_cast<std::uint32_t>(payload.size())).raw(payload);
  auto body = w.take();
  auto digest = sha256(body);
  body.insert(body.end(), digest.begin(), digest.end());
  return body;
}

Envelope open_envelope(ByteView data) {
  if (data.size() < kHeader + 32) throw DecodeError("envelope truncated");
  if (!std::equal(kMagic.begin(), kMagic.end(), data.begin())) throw BadMagic();
  Reader r(data.subspan(4));
  Envelope e;
  e.version = r.u32();
  auto type = r.u32();
  auto length = r.u32();
  if (data.size() != kHeader + length + 32) throw DecodeError("envelope length");
  auto body = data.first(kHeader + length);
  auto digest = sha256(body);
  if (!std::equal(digest.begin(), digest.end(), data.begin() + kHeader + length)) throw BadDigest();
  if (e.version != kEnvelopeVersion) throw VersionMismatch("envelope version " + std::to_string(e.version));
  e.type = static_cast<ArtifactType>(type);
  e.payload = to_bytes(data.subspan(kHeader, length));
  return e;
}

Bytes open_envelope(ByteView data, ArtifactType expected) {
  auto e = open_envelope(data);
  if (e.type != expected)
    throw DecodeError("expected " + std::string(artifact_name(expected)) + ", found " +
                      std::string(artifact_name(e.type)));
  return std::move(e.payload);
}

std::string_view artifact_name(ArtifactType type) {
  switch (type) {
    case ArtifactType::CvqcParams: return "cvqc-params";
    case ArtifactType::CvqcVerifyKey: return "cvqc-verify-key";
    case ArtifactType::CvqcProof: return "cvqc-proof";
    case ArtifactType::HashedProof: return "hashed-proof";
    case ArtifactType::NullObfuscation: return "null-obfuscation";
    case ArtifactType::WeCiphertext: return "we-ciphertext";
    case ArtifactType::NizkCrs: return "nizk-crs";
    case ArtifactType::NizkProof: return "nizk-proof";
    case ArtifactType::ZaprCrs: return "zapr-crs";
    case ArtifactType::ZaprProof: return "zapr-proof";
    case ArtifactType::AbePublicKey: return "abe-public-key";
    case ArtifactType::AbeMasterKey: return "abe-master-key";
    case ArtifactType::AbeUserKey: return "abe-user-key";
    case ArtifactType::AbeCiphertext: return "abe-ciphertext";
    case ArtifactType::CprfPublic: return "cprf-public";
    case ArtifactType::CprfKey: return "cprf-key";
    case ArtifactType::KpUserKey: return "kp-user-key";
    case ArtifactType::Share: return "share";
    case ArtifactType::PeCiphertext: return "pe-ciphertext";
    case ArtifactType::NizkEscrow: return "nizk-escrow";
    case ArtifactType::Statement: return "statement";
    case ArtifactType::VerifierSpec: return "verifier-spec";
  }
  return "unknown";
}

}  // namespace qnio
