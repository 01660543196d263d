#include "stw/rational.hpp"

#include <cstdlib>

namespace stw {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

u128 uabs128(i128 v) { return v < 0 ? u128(-(v + 1)) + 1 : u128(v); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(i128 v) {
    return v >= i128(INT64_MIN) && v <= i128(INT64_MAX);
}

mpz_class mpz_from_i128(i128 v) {
    bool neg = v < 0;
    u128 a = uabs128(v);
    mpz_class hi = static_cast<unsigned long>(a >> 64);
    mpz_class lo = static_cast<unsigned long>(a & ~0ULL);
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rat Rat::make_small(long long n, long long d) {
    if (d == 0) throw bad_rational("division by zero");
    return from_i128(i128(n), i128(d));
}

Rat Rat::from_i128(i128 n, i128 d) {
    if (d == 0) throw bad_rational("division by zero");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) return Rat();
    u128 g = gcd128(uabs128(n), u128(d));
    if (g > 1) {
        n = n < 0 ? -i128(uabs128(n) / g) : i128(uabs128(n) / g);
        d = i128(u128(d) / g);
    }
    if (fits64(n) && fits64(d)) {
        Rat r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }
    mpq_class q;
    q.get_num() = mpz_from_i128(n);
    q.get_den() = mpz_from_i128(d);
    return box(std::move(q));  // already reduced
}

Rat Rat::box(mpq_class q) {
    // demote when it fits the small representation
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
        Rat r;
        r.num_ = q.get_num().get_si();
        r.den_ = q.get_den().get_si();
        return r;
    }
    Rat r;
    r.num_ = 0;
    r.den_ = 1;
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
}

Rat Rat::from_mpq(const mpq_class& q0) {
    mpq_class q = q0;
    q.canonicalize();
    return box(std::move(q));
}

Rat Rat::from_string(const std::string& s) {
    auto slash = s.find('/');
    mpq_class q;
    if (slash == std::string::npos) {
        mpz_class n;
        if (n.set_str(s, 10) != 0) throw bad_rational("bad rational literal: " + s);
        q = n;
    } else {
        mpz_class n, d;
        if (n.set_str(s.substr(0, slash), 10) != 0 || d.set_str(s.substr(slash + 1), 10) != 0)
            throw bad_rational("bad rational literal: " + s);
        if (d == 0) throw bad_rational("zero denominator: " + s);
        q = mpq_class(n) / mpq_class(d);
    }
    q.canonicalize();
    return box(std::move(q));
}

int Rat::sign() const {
    if (big_) return sgn(*big_);
    return num_ > 0 ? 1 : num_ < 0 ? -1 : 0;
}

mpq_class Rat::to_mpq() const {
    if (big_) return *big_;
    mpq_class q(static_cast<long>(num_), static_cast<long>(den_));
    q.canonicalize();
    return q;
}

double Rat::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rat::str() const {
    if (big_) {
        std::string s = big_->get_num().get_str();
        if (big_->get_den() != 1) s += "/" + big_->get_den().get_str();
        return s;
    }
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
}

std::string to_string(const Rat& r) { return r.str(); }

Rat Rat::operator-() const {
    if (big_) return box(mpq_class(-*big_));
    Rat r;
    if (num_ == INT64_MIN) return from_i128(-i128(num_), i128(den_));
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rat operator+(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_)
        return Rat::from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                              i128(a.den_) * b.den_);
    return Rat::box(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rat operator-(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_)
        return Rat::from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                              i128(a.den_) * b.den_);
    return Rat::box(mpq_class(a.to_mpq() - b.to_mpq()));
}

Rat operator*(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_)
        return Rat::from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    return Rat::box(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw bad_rational("division by zero");
    if (!a.big_ && !b.big_)
        return Rat::from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    return Rat::box(mpq_class(a.to_mpq() / b.to_mpq()));
}

int Rat::cmp(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) {
        i128 lhs = i128(a.num_) * b.den_;
        i128 rhs = i128(b.num_) * a.den_;
        return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
    }
    return ::cmp(a.to_mpq(), b.to_mpq());
}

}  // namespace stw
