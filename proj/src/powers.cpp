#include "stw/powers.hpp"

#include <cmath>
#include <stdexcept>

namespace stw {

int cmp_pow(const mpz_class& count, long long N, const Rat& expo) {
    if (count < 0) throw std::invalid_argument("cmp_pow: negative count");
    if (expo.sign() < 0) throw std::invalid_argument("cmp_pow: negative exponent");
    if (expo.is_big()) throw std::invalid_argument("cmp_pow: oversized exponent");
    unsigned long num = static_cast<unsigned long>(expo.num_small());
    unsigned long den = static_cast<unsigned long>(expo.den_small());
    mpz_class lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), count.get_mpz_t(), den);
    mpz_class base(static_cast<long>(N));
    mpz_pow_ui(rhs.get_mpz_t(), base.get_mpz_t(), num);
    return ::cmp(lhs, rhs);
}

int cmp_pow(long long count, long long N, const Rat& expo) {
    return cmp_pow(mpz_class(static_cast<long>(count)), N, expo);
}

long long ceil_pow(long long N, const Rat& expo) {
    long long c = static_cast<long long>(std::ceil(pow_approx(N, expo))) + 2;
    while (c > 0 && cmp_pow(c - 1, N, expo) >= 0) --c;
    while (cmp_pow(c, N, expo) < 0) ++c;
    return c;
}

long long floor_pow(long long N, const Rat& expo) {
    long long c = ceil_pow(N, expo);
    if (cmp_pow(c, N, expo) == 0) return c;
    return c - 1;
}

mpz_class iroot(const mpz_class& n, unsigned long k) {
    mpz_class r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

double pow_approx(long long N, const Rat& expo) {
    return std::pow(static_cast<double>(N), expo.to_double());
}

long long fixed_ln32(long long n) {
    if (n < 1) throw std::invalid_argument("fixed_ln32: n < 1");
    if (n == 1) return 0;
    // ln n = B*ln2 + ln(m), m = n/2^B in [1,2)
    int b = 0;
    for (long long t = n; t > 1; t >>= 1) ++b;  // 2^b <= n < 2^(b+1)
    // ln2 * 2^62, floor (frozen constant)
    const mpz_class ln2_62("3196577161300663914");
    Rat m(n, 1LL << b);  // in [1, 2)
    // atanh series: ln m = 2 * sum z^(2t+1)/(2t+1), z = (m-1)/(m+1) in [0, 1/3)
    Rat z = (m - Rat(1)) / (m + Rat(1));
    Rat z2 = z * z, term = z, acc = Rat(0);
    for (int t = 0; t < 24; ++t) {
        acc += term / Rat(2 * t + 1);
        term *= z2;
    }
    Rat lnm = Rat(2) * acc;  // accurate far beyond 2^-32
    // floor(2^32 * (b*ln2 + lnm)); compute in exact arithmetic
    mpq_class total = mpq_class(ln2_62) * b / mpz_class(mpz_class(1) << 30) + lnm.to_mpq() * (mpz_class(1) << 32);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), total.get_num().get_mpz_t(), total.get_den().get_mpz_t());
    return fl.get_si();
}

long long gap_window(long long c_gap, long long N, long long r) {
    if (r < 1) throw std::invalid_argument("gap_window: r < 1");
    // ceil(c_gap * N * ln(N) / r) with ln in 2^-32 fixed point
    mpz_class num = mpz_class(static_cast<long>(c_gap)) * static_cast<long>(N) *
                    static_cast<long>(fixed_ln32(N));
    mpz_class den = mpz_class(static_cast<long>(r)) << 32;
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q.get_si();
}

}  // namespace stw
