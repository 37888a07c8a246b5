// Acceptance gate: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <unistd.h>

#include "cli_script.hpp"
#include "qnio/selftest.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = slurp(e.path());
  return files;
}

// Runs the script in `dir`; stdout and the exit code of step i land in step_i.txt.
void run_script(const std::string& bin, const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (std::size_t i = 0; i < kCliScript.size(); ++i) {
    auto out = "step_" + std::to_string(i) + ".txt";
    std::string cmd = "cd '" + dir.string() + "' && '" + bin + "' " + kCliScript[i] + " > " + out + " 2>&1; echo \"exit $?\" >> " + out;
    if (std::system(cmd.c_str()) == -1) std::cerr << "could not start: " << cmd << "\n";
  }
}

qnio::CheckResult cli_criterion(const std::string& bin) {
  qnio::CheckResult r{11, "CLI reproducibility", false, "", 0, 0};
  auto t0 = std::chrono::steady_clock::now();
  auto base = fs::temp_directory_path() / ("qnio-acceptance-" + std::to_string(::getpid()));
  run_script(bin, base / "a");
  run_script(bin, base / "b");
  auto a = tree(base / "a");
  auto b = tree(base / "b");
  std::size_t failed_steps = 0;
  for (std::size_t i = 0; i < kCliScript.size(); ++i) {
    const auto& out = a["step_" + std::to_string(i) + ".txt"];
    if (out.find("exit 0") == std::string::npos) {
      ++failed_steps;
      std::cerr << "step failed: " << kCliScript[i] << "\n" << out;
    }
  }
  std::size_t differing = 0;
  for (const auto& [name, bytes] : a) {
    auto it = b.find(name);
    if (it == b.end() || it->second != bytes) ++differing;
  }
  differing += b.size() > a.size() ? b.size() - a.size() : 0;
  r.pass = failed_steps == 0 && differing == 0 && a.size() == b.size();
  std::ostringstream d;
  d << kCliScript.size() << " commands, " << a.size() << " files compared, " << differing << " differ, "
    << failed_steps << " commands failed";
  r.detail = d.str();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  fs::remove_all(base);
  return r;
}

void print(const qnio::CheckResult& r) {
  std::cout << (r.pass ? "PASS" : "FAIL") << " " << std::setw(2) << r.id << "  " << r.name << "  ["
            << std::fixed << std::setprecision(2) << r.seconds << "s";
  if (r.limit > 0) std::cout << " / " << std::setprecision(0) << r.limit << "s";
  std::cout << "]  " << r.detail << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to qnio binary>\n";
    return 2;
  }
  bool all = true;
  for (int id = 1; id <= qnio::kLibraryCriteria; ++id) {
    auto r = qnio::run_criterion(id, qnio::Scale::Full);
    print(r);
    all = all && r.pass;
  }
  auto cli = cli_criterion(fs::absolute(argv[1]).string());
  print(cli);
  all = all && cli.pass;
  std::cout << (all ? "ALL PASS" : "SOME FAILED") << std::endl;
  return all ? 0 : 1;
}
