#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace h3 {

// Exact integer with an int64 fast path. Values that do not fit in int64 are
// held in a GMP integer; the representation is always normalized so that
// big_ is non-null exactly when the value is outside the int64 range.
class Integer {
public:
    Integer() = default;
    Integer(int v) : small_(v) {}
    Integer(long v) : small_(v) {}
    Integer(long long v) : small_(v) {}
    Integer(unsigned v) : small_(v) {}
    Integer(unsigned long v);
    Integer(unsigned long long v);
    explicit Integer(const mpz_class& v) { assign(v); }

    Integer(const Integer& o) : small_(o.small_), big_(o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr) {}
    Integer(Integer&&) noexcept = default;
    Integer& operator=(const Integer& o)
    {
        if (this != &o) {
            small_ = o.small_;
            big_ = o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Integer& operator=(Integer&&) noexcept = default;

    static Integer parse(std::string_view text);

    bool is_small() const { return !big_; }
    bool is_zero() const { return !big_ && small_ == 0; }
    bool is_one() const { return !big_ && small_ == 1; }
    bool is_unit() const { return !big_ && (small_ == 1 || small_ == -1); }
    int sign() const
    {
        if (big_)
            return sgn(*big_);
        return (small_ > 0) - (small_ < 0);
    }
    // Only meaningful when is_small().
    int64_t small() const { return small_; }
    bool fits_int64() const { return !big_; }
    int64_t to_int64() const;
    mpz_class to_mpz() const { return big_ ? *big_ : mpz_class(static_cast<long>(small_)); }
    size_t bit_length() const;
    std::string str() const;
    size_t hash() const;

    Integer operator-() const
    {
        if (!big_ && small_ != std::numeric_limits<int64_t>::min())
            return Integer(static_cast<long long>(-small_));
        return Integer(mpz_class(-to_mpz()));
    }

    Integer& operator+=(const Integer& o)
    {
        int64_t r;
        if (!big_ && !o.big_ && !__builtin_add_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
        assign(to_mpz() + o.to_mpz());
        return *this;
    }
    Integer& operator-=(const Integer& o)
    {
        int64_t r;
        if (!big_ && !o.big_ && !__builtin_sub_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
        assign(to_mpz() - o.to_mpz());
        return *this;
    }
    Integer& operator*=(const Integer& o)
    {
        int64_t r;
        if (!big_ && !o.big_ && !__builtin_mul_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
        assign(to_mpz() * o.to_mpz());
        return *this;
    }
    // this -= a * b, the inner operation of every elimination loop
    void sub_mul(const Integer& a, const Integer& b)
    {
        int64_t p, r;
        if (!big_ && !a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &p) &&
            !__builtin_sub_overflow(small_, p, &r)) {
            small_ = r;
            return;
        }
        assign(to_mpz() - a.to_mpz() * b.to_mpz());
    }
    void add_mul(const Integer& a, const Integer& b)
    {
        int64_t p, r;
        if (!big_ && !a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &p) &&
            !__builtin_add_overflow(small_, p, &r)) {
            small_ = r;
            return;
        }
        assign(to_mpz() + a.to_mpz() * b.to_mpz());
    }

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
    // Truncating division and remainder, as for built-in integers.
    friend Integer operator/(const Integer& a, const Integer& b);
    friend Integer operator%(const Integer& a, const Integer& b);

    friend bool operator==(const Integer& a, const Integer& b)
    {
        if (!a.big_ && !b.big_)
            return a.small_ == b.small_;
        if (a.big_ && b.big_)
            return *a.big_ == *b.big_;
        return false;
    }
    friend std::strong_ordering operator<=>(const Integer& a, const Integer& b)
    {
        if (!a.big_ && !b.big_)
            return a.small_ <=> b.small_;
        int c = cmp(a.to_mpz(), b.to_mpz());
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.str(); }

private:
    void assign(const mpz_class& v);

    int64_t small_ = 0;
    std::unique_ptr<mpz_class> big_;
};

Integer abs(const Integer& a);
// Floor division and the matching remainder in [0, |m|) for m != 0.
Integer floor_div(const Integer& a, const Integer& b);
Integer mod(const Integer& a, const Integer& m);
// Nearest-integer quotient used by size-reducing elimination steps.
Integer round_div(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
bool divides(const Integer& d, const Integer& a);
// g = gcd(a, b) >= 0 with g = x*a + y*b.
struct ExtendedGcd {
    Integer g, x, y;
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);
Integer pow(const Integer& base, unsigned exp);

using IntVec = std::vector<Integer>;

} // namespace h3

template <>
struct std::hash<h3::Integer> {
    size_t operator()(const h3::Integer& v) const noexcept { return v.hash(); }
};
