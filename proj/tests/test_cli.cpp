#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "qnio/cli.hpp"
#include "qnio/envelope.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qnio");
  std::ostringstream out, err;
  int code = qnio::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

// Each test works in its own scratch directory.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("qnio-test-cli-" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& f) const { return (dir / f).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"we"}).code == 2);
  CHECK(cli({"we", "enc", "--x", "10z", "--m", "1"}).code == 2);
  CHECK(cli({"--params", "huge", "we", "enc", "--x", "1", "--m", "1"}).code == 2);
  CHECK(cli({"we", "dec", "--x", "1", "--in", "/nonexistent/file"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("witness encryption through the command line") {
  Scratch s("we");
  auto enc = cli({"--params", "mini", "we", "enc", "--x", "100", "--m", "0xbeef", "--out", s / "c.qnk"});
  REQUIRE(enc.code == 0);
  CHECK(enc.out.find("\"type\": \"we-ciphertext\"") != std::string::npos);
  auto dec = cli({"we", "dec", "--x", "100", "--in", s / "c.qnk"});
  CHECK(dec.code == 0);
  CHECK(trim(dec.out) == "0xbeef");
  auto wrong = cli({"we", "dec", "--x", "110", "--in", s / "c.qnk"});
  CHECK(wrong.code == 1);

  REQUIRE(cli({"--params", "mini", "we", "enc", "--x", "111", "--m", "1", "--out", s / "b.qnk"}).code == 0);
  CHECK(trim(cli({"we", "dec", "--x", "111", "--in", s / "b.qnk"}).out) == "1");
}

TEST_CASE("artifacts carry their type") {
  Scratch s("types");
  REQUIRE(cli({"abe", "gen", "--bits", "3", "--mpk", s / "mpk.qnk", "--msk", s / "msk.qnk"}).code == 0);
  auto raw = slurp(s / "mpk.qnk");
  qnio::Bytes bytes(raw.begin(), raw.end());
  CHECK_NOTHROW(qnio::open_envelope(bytes, qnio::ArtifactType::AbePublicKey));
  // a public key where a master key is expected
  CHECK(cli({"abe", "keygen", "--msk", s / "mpk.qnk", "--x", "101", "--out", s / "k.qnk"}).code == 1);
  // a corrupted file
  bytes[20] ^= 1;
  std::ofstream(s / "bad.qnk", std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()),
                                                         static_cast<std::streamsize>(bytes.size()));
  auto r = cli({"--params", "mini", "abe", "enc", "--mpk", s / "bad.qnk", "--m", "1", "--out", s / "c.qnk"});
  CHECK(r.code == 1);
  CHECK(r.err.find("BadDigest") != std::string::npos);
}

TEST_CASE("language shorthand takes the instance width") {
  Scratch s("lang");
  REQUIRE(cli({"--params", "mini", "--lang", "maj", "nio", "obf", "--x", "11010", "--out", s / "o.qnk"}).code == 0);
  CHECK(trim(cli({"--lang", "maj", "nio", "eval", "--x", "11010", "--in", s / "o.qnk"}).out) == "1");
  REQUIRE(cli({"--params", "mini", "--lang", "and:5", "nio", "obf", "--x", "11010", "--out", s / "p.qnk"}).code == 0);
  CHECK(trim(cli({"--lang", "and:5", "nio", "eval", "--x", "11010", "--in", s / "p.qnk"}).out) == "0");
}

TEST_CASE("nizk proofs and simulations are the same bytes") {
  Scratch s("nizk");
  REQUIRE(cli({"--params", "mini", "nizk", "setup", "--bits", "3", "--crs", s / "crs.qnk", "--escrow", s / "e.qnk"})
              .code == 0);
  REQUIRE(cli({"nizk", "prove", "--crs", s / "crs.qnk", "--x", "111", "--out", s / "p.qnk"}).code == 0);
  REQUIRE(cli({"nizk", "sim", "--escrow", s / "e.qnk", "--x", "111", "--out", s / "q.qnk"}).code == 0);
  CHECK(slurp(s / "p.qnk") == slurp(s / "q.qnk"));
  CHECK(cli({"nizk", "verify", "--crs", s / "crs.qnk", "--x", "111", "--proof", s / "p.qnk"}).code == 0);
  CHECK(cli({"nizk", "verify", "--crs", s / "crs.qnk", "--x", "100", "--proof", s / "p.qnk"}).code == 1);
  CHECK(cli({"nizk", "prove", "--crs", s / "crs.qnk", "--x", "110", "--out", s / "r.qnk"}).code == 1);
}

TEST_CASE("fixed seeds reproduce artifacts") {
  Scratch s("seed");
  for (const char* name : {"a.qnk", "b.qnk"})
    REQUIRE(cli({"--seed", "9", "--params", "mini", "cprf", "gen", "--bits", "3", "--pp", s / name, "--key",
                 s / (std::string("k") + name)})
                .code == 0);
  CHECK(slurp(s / "a.qnk") == slurp(s / "b.qnk"));
  REQUIRE(cli({"--seed", "10", "--params", "mini", "cprf", "gen", "--bits", "3", "--pp", s / "c.qnk", "--key",
               s / "kc.qnk"})
              .code == 0);
  CHECK(slurp(s / "a.qnk") != slurp(s / "c.qnk"));
}

TEST_CASE("attack reports") {
  Scratch s("attack");
  auto r = cli({"--params", "mini", "attack", "flip", "--instances", "2", "--report", s / "r.json"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"exact\": 2") != std::string::npos);
  CHECK(slurp(s / "r.json").find("\"transcripts\"") != std::string::npos);
}

TEST_CASE("installed binary") {
  const char* bin = std::getenv("QNIO_BIN");
  if (!bin) return;
  auto cmd = std::string("'") + bin + "' --help > /dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  cmd = std::string("'") + bin + "' nosuchcommand > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("trapdoor verification accepts honest proofs and simgen rejects them") {
  Scratch s("td");
  for (auto [mode, want] : {std::pair{"tdgen", 0}, std::pair{"simgen", 1}}) {
    REQUIRE(cli({"cvqc", mode, "--x", "100", "--proto", "toy", "--pp", s / "pp.qnk", "--spec", s / "spec.qnk",
                 "--seed", "9"})
                .code == 0);
    REQUIRE(cli({"cvqc", "prove", "--x", "100", "--pp", s / "pp.qnk", "--out", s / "pi.qnk"}).code == 0);
    CHECK(cli({"cvqc", "tdverify", "--spec", s / "spec.qnk", "--proof", s / "pi.qnk"}).code == want);
  }
}

TEST_CASE("proof commands print hex") {
  Scratch s("hex");
  REQUIRE(cli({"nizk", "setup", "--bits", "3", "--crs", s / "crs.qnk", "--escrow", s / "e.qnk"}).code == 0);
  auto pr = cli({"nizk", "prove", "--crs", s / "crs.qnk", "--x", "010", "--out", s / "p.qnk"});
  REQUIRE(pr.code == 0);
  CHECK(pr.out.find("\"hex\": \"") != std::string::npos);
}
