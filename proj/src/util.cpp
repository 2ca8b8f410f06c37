#include "burn/util.hpp"

#include "burn/errors.hpp"

namespace burn {

long long floor_isqrt(long long x) {
  if (x < 0) throw DomainError("floor_isqrt: negative input");
  if (x < 2) return x;
  // Newton iteration from a safe overestimate; exact for 63-bit inputs.
  long long r = static_cast<long long>(__builtin_sqrtl(static_cast<long double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

int ceil_isqrt(long long x) {
  if (x < 0) throw DomainError("ceil_isqrt: negative input");
  long long r = floor_isqrt(x);
  if (r * r < x) ++r;
  return static_cast<int>(r);
}

}  // namespace burn
