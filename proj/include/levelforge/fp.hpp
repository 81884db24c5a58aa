#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lf {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* Prime field context. The modulus is a session-wide parameter: set it once
 * at startup (CLI reads LEVELFORGE_PRIME), before any arithmetic happens. */
namespace fp {

inline std::atomic<std::uint32_t>& prime_slot() {
  static std::atomic<std::uint32_t> p{32003};
  return p;
}

inline std::uint32_t prime() { return prime_slot().load(std::memory_order_relaxed); }

void set_prime(std::uint32_t p);

inline std::uint32_t add(std::uint32_t a, std::uint32_t b) {
  std::uint64_t s = std::uint64_t(a) + b;
  std::uint64_t p = prime();
  return std::uint32_t(s >= p ? s - p : s);
}

inline std::uint32_t sub(std::uint32_t a, std::uint32_t b) {
  std::uint64_t p = prime();
  return std::uint32_t(a >= b ? a - b : a + p - b);
}

inline std::uint32_t neg(std::uint32_t a) { return a == 0 ? 0 : std::uint32_t(prime() - a); }

inline std::uint32_t mul(std::uint32_t a, std::uint32_t b) {
  return std::uint32_t((std::uint64_t(a) * b) % prime());
}

inline std::uint32_t reduce(long long v) {
  long long p = prime();
  long long r = v % p;
  if (r < 0) r += p;
  return std::uint32_t(r);
}

std::uint32_t pow(std::uint32_t a, std::uint64_t e);
std::uint32_t inv(std::uint32_t a);

}  // namespace fp

using Fp = std::uint32_t;

}  // namespace lf
