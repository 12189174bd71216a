#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace wordpred {

// Shortest decimal string that parses back to exactly the same double.
// Keeps TSV artifacts readable while making round-trips bit-exact.
std::string format_double(double value);

// Missing values in TSV artifacts.
inline constexpr const char* kNA = "NA";

std::vector<std::string> split_tab(const std::string& line);

std::string join_tab(const std::vector<std::string>& fields);

// Reads a whole file as raw bytes. Throws std::runtime_error on failure.
std::string read_file_bytes(const std::filesystem::path& path);

void write_file_text(const std::filesystem::path& path, const std::string& content);

// Deterministic 64-bit generator (SplitMix64). Used wherever seeded choices
// must be byte-stable across runs and platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n). n must be positive.
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

// Summation over a fixed pairwise tree; the reduction order does not depend
// on how callers chunk their work, so outputs stay bit-stable.
double pairwise_sum(const double* data, std::size_t n);
double pairwise_sum(const std::vector<double>& values);

}  // namespace wordpred
