#pragma once

#include <cstdint>

#include "stw/rational.hpp"

namespace stw {

// Exact comparisons of integer counts against rational powers N^e. Every
// threshold of the form N^{a +- c*eps} is decided here, bit-exactly:
//   count >= N^e  <=>  count^den >= N^num   (e = num/den >= 0).

// -1, 0, +1 for count <?> N^e. Requires count >= 0, N >= 1, e >= 0.
int cmp_pow(const mpz_class& count, long long N, const Rat& expo);
int cmp_pow(long long count, long long N, const Rat& expo);

inline bool ge_pow(long long count, long long N, const Rat& e) { return cmp_pow(count, N, e) >= 0; }
inline bool le_pow(long long count, long long N, const Rat& e) { return cmp_pow(count, N, e) <= 0; }
inline bool gt_pow(long long count, long long N, const Rat& e) { return cmp_pow(count, N, e) > 0; }
inline bool lt_pow(long long count, long long N, const Rat& e) { return cmp_pow(count, N, e) < 0; }

// smallest integer c with c >= N^e, and largest with c <= N^e
long long ceil_pow(long long N, const Rat& expo);
long long floor_pow(long long N, const Rat& expo);

// floor of the k-th root of n (n >= 0, k >= 1)
mpz_class iroot(const mpz_class& n, unsigned long k);

// nonauthoritative decimal preview of N^e for reports
double pow_approx(long long N, const Rat& expo);

// floor(2^32 * ln n) for n >= 1, computed deterministically from exact rational
// series (no platform libm involved); used for the C*N*lnN/r audit window.
long long fixed_ln32(long long n);

// ceil(C_gap * N * ln N / r) with the fixed-point ln above
long long gap_window(long long c_gap, long long N, long long r);

}  // namespace stw
