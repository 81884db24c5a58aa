#include "levelforge/fp.hpp"

namespace lf::fp {

static bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void set_prime(std::uint32_t p) {
  if (!is_prime_u32(p)) throw Error("field modulus must be prime, got " + std::to_string(p));
  if (p >= (1u << 31)) throw Error("field modulus must fit in 31 bits");
  prime_slot().store(p, std::memory_order_relaxed);
}

std::uint32_t pow(std::uint32_t a, std::uint64_t e) {
  std::uint32_t r = 1 % prime();
  std::uint32_t b = a % prime();
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::uint32_t inv(std::uint32_t a) {
  a %= prime();
  if (a == 0) throw Error("division by zero in prime field");
  return pow(a, prime() - 2);
}

}  // namespace lf::fp
