// run_report.hpp - per-invocation report shared by the effres subcommands.
#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "effres/error.hpp"

namespace effres::cli {

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kInputViolation = 2 };

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string pass_fail(bool ok) { return ok ? "pass" : "fail"; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct SeedChoice {
  std::uint64_t value = 0;
  std::string source = "default";
};

inline SeedChoice resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return {*flag, "flag"};
  if (const char* env = std::getenv("ER_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return {v, "ER_SEED"};
    } catch (const std::exception&) {
    }
    fail(ErrorCode::InvalidArgument, std::string("ER_SEED is not an unsigned integer: ") + env);
  }
  return {};
}

/// Header (command, digest, seed), body, then the wall-clock line last so
/// reruns can be compared byte for byte above it.
class RunReport {
 public:
  explicit RunReport(std::string command) : command_(std::move(command)), start_(Clock::now()) {}

  void add_input(std::string_view bytes) {
    digest_ = fnv1a(bytes, digest_);
    has_input_ = true;
  }
  void set_seed(const SeedChoice& seed) { seed_ = seed; }

  std::ostream& out() { return body_; }
  void line(const std::string& text) { body_ << text << '\n'; }

  void check(const std::string& name, bool ok) {
    line(name + ": " + pass_fail(ok));
    if (!ok) failed_ = true;
  }
  void fail_check() { failed_ = true; }
  bool failed() const { return failed_; }

  void print(std::ostream& os) const {
    os << "command: " << command_ << '\n';
    os << "input-digest: fnv1a64:" << (has_input_ ? hex64(digest_) : std::string("none")) << '\n';
    if (seed_) os << "seed: " << seed_->value << " (" << seed_->source << ")\n";
    os << body_.str();
    const std::chrono::duration<double> elapsed = Clock::now() - start_;
    os << "wall-clock: " << fmt(elapsed.count()) << " s\n";
  }

 private:
  using Clock = std::chrono::steady_clock;
  std::string command_;
  std::uint64_t digest_ = 0xcbf29ce484222325ULL;
  bool has_input_ = false;
  std::optional<SeedChoice> seed_;
  std::ostringstream body_;
  bool failed_ = false;
  Clock::time_point start_;
};

}  // namespace effres::cli
