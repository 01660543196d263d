#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace stw {

struct bad_rational : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact rational scalar. Values that fit in int64 numerator/denominator are kept
// inline and computed with __int128 intermediates; anything larger is promoted to
// a shared immutable GMP rational. Always stored in lowest terms, denominator > 0.
class Rat {
public:
    Rat() = default;
    Rat(long long n) : num_(n) {}
    Rat(int n) : num_(n) {}
    Rat(long long n, long long d) { *this = make_small(n, d); }
    explicit Rat(const mpq_class& q) { *this = from_mpq(q); }

    static Rat from_string(const std::string& s);

    bool is_big() const { return big_ != nullptr; }
    bool is_zero() const { return big_ ? sgn(*big_) == 0 : num_ == 0; }
    int sign() const;

    // small-path accessors; only valid when !is_big()
    long long num_small() const { return num_; }
    long long den_small() const { return den_; }

    mpq_class to_mpq() const;
    double to_double() const;
    std::string str() const;

    Rat operator-() const;
    Rat abs() const { return sign() < 0 ? -*this : *this; }

    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);

    Rat& operator+=(const Rat& b) { return *this = *this + b; }
    Rat& operator-=(const Rat& b) { return *this = *this - b; }
    Rat& operator*=(const Rat& b) { return *this = *this * b; }
    Rat& operator/=(const Rat& b) { return *this = *this / b; }

    // three-way exact comparison
    static int cmp(const Rat& a, const Rat& b);

    friend bool operator==(const Rat& a, const Rat& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return cmp(a, b) != 0; }
    friend bool operator<(const Rat& a, const Rat& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a, b) >= 0; }

private:
    long long num_ = 0;
    long long den_ = 1;
    std::shared_ptr<const mpq_class> big_;

    static Rat make_small(long long n, long long d);
    static Rat from_i128(__int128 n, __int128 d);
    static Rat from_mpq(const mpq_class& q);
    static Rat box(mpq_class q);
};

std::string to_string(const Rat& r);

}  // namespace stw
