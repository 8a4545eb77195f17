#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace eis {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

enum class ErrorKind {
  BadPrime,
  CompositeModulus,
  BothZero,
  NotEisensteinPrime,
  RangeError,
  UnsupportedPrime,
  UnsupportedDegree,
  PairingUndefined,
  NotSupersingular,
  InternalInvariantViolation,
  RankMismatch,
  NotWellDefined,
  VerificationFailed,
  GeneratorInstability,
  BadIndex,
  BudgetExceeded,
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

inline u64 mulmod(u64 a, u64 b, u64 m) {
  if (m <= (1ull << 32)) return (a * b) % m;
  return static_cast<u64>((u128)a * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;  // m <= 2^61, no overflow
  return s >= m ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 negmod(u64 a, u64 m) { return a ? m - a : 0; }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Inverse modulo m; requires gcd(a, m) = 1.
inline u64 invmod(u64 a, u64 m) {
  i64 t = 0, newt = 1;
  i64 r = (i64)m, newr = (i64)(a % m);
  while (newr != 0) {
    i64 q = r / newr;
    i64 tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw Error(ErrorKind::RangeError, "invmod: not invertible");
  return t < 0 ? (u64)(t + (i64)m) : (u64)t;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Prime factorization by trial division (inputs here are ~N^2 <= 2^44 at desk
// scale, so this is plenty).
inline std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> fs;
  for (u64 d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      fs.push_back({d, e});
    }
  }
  if (n > 1) fs.push_back({n, 1});
  return fs;
}

inline int valuation(u64 n, u64 p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline u64 upow(u64 a, int e) {
  u64 r = 1;
  while (e--) r *= a;
  return r;
}

inline std::vector<u64> primes_up_to(u64 bound) {
  std::vector<bool> sieve(bound + 1, true);
  std::vector<u64> ps;
  for (u64 i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    ps.push_back(i);
    for (u64 j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  return ps;
}

}  // namespace eis
