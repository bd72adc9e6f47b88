#include "h3/integer.hpp"

#include <stdexcept>

namespace h3 {

namespace {

const mpz_class kMin64(static_cast<long>(std::numeric_limits<int64_t>::min()));
const mpz_class kMax64(static_cast<long>(std::numeric_limits<int64_t>::max()));

} // namespace

Integer::Integer(unsigned long v)
{
    if (v <= static_cast<unsigned long>(std::numeric_limits<int64_t>::max()))
        small_ = static_cast<int64_t>(v);
    else
        assign(mpz_class(v));
}

Integer::Integer(unsigned long long v) : Integer(static_cast<unsigned long>(v)) {}

void Integer::assign(const mpz_class& v)
{
    if (v >= kMin64 && v <= kMax64) {
        small_ = v.get_si();
        big_.reset();
    } else {
        small_ = 0;
        if (big_)
            *big_ = v;
        else
            big_ = std::make_unique<mpz_class>(v);
    }
}

Integer Integer::parse(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw std::invalid_argument("empty integer literal");
    mpz_class v;
    if (v.set_str(s, 10) != 0)
        throw std::invalid_argument("invalid integer literal '" + s + "'");
    return Integer(v);
}

int64_t Integer::to_int64() const
{
    if (big_)
        throw std::overflow_error("integer does not fit in 64 bits");
    return small_;
}

size_t Integer::bit_length() const
{
    if (big_)
        return mpz_sizeinbase(big_->get_mpz_t(), 2);
    uint64_t m = small_ < 0 ? static_cast<uint64_t>(-(small_ + 1)) + 1 : static_cast<uint64_t>(small_);
    return m == 0 ? 0 : 64 - __builtin_clzll(m);
}

std::string Integer::str() const
{
    if (big_)
        return big_->get_str();
    return std::to_string(small_);
}

size_t Integer::hash() const
{
    if (!big_)
        return std::hash<int64_t>{}(small_);
    return std::hash<std::string>{}(big_->get_str(16));
}

Integer operator/(const Integer& a, const Integer& b)
{
    if (b.is_zero())
        throw std::domain_error("division by zero");
    if (a.is_small() && b.is_small() && !(a.small() == std::numeric_limits<int64_t>::min() && b.small() == -1))
        return Integer(static_cast<long long>(a.small() / b.small()));
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Integer(q);
}

Integer operator%(const Integer& a, const Integer& b)
{
    if (b.is_zero())
        throw std::domain_error("division by zero");
    if (a.is_small() && b.is_small()) {
        if (b.small() == -1)
            return Integer(0);
        return Integer(static_cast<long long>(a.small() % b.small()));
    }
    mpz_class r;
    mpz_tdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Integer(r);
}

Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

Integer floor_div(const Integer& a, const Integer& b)
{
    if (b.is_zero())
        throw std::domain_error("division by zero");
    if (a.is_small() && b.is_small() && !(a.small() == std::numeric_limits<int64_t>::min() && b.small() == -1)) {
        int64_t q = a.small() / b.small();
        int64_t r = a.small() % b.small();
        if (r != 0 && ((r < 0) != (b.small() < 0)))
            --q;
        return Integer(static_cast<long long>(q));
    }
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Integer(q);
}

Integer mod(const Integer& a, const Integer& m)
{
    if (m.is_zero())
        throw std::domain_error("modulus zero");
    if (a.is_small() && m.is_small() && m.small() != std::numeric_limits<int64_t>::min()) {
        int64_t mm = m.small() < 0 ? -m.small() : m.small();
        int64_t r = a.small() % mm;
        if (r < 0)
            r += mm;
        return Integer(static_cast<long long>(r));
    }
    mpz_class r;
    mpz_class mm = ::abs(m.to_mpz());
    mpz_fdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), mm.get_mpz_t());
    return Integer(r);
}

Integer round_div(const Integer& a, const Integer& b)
{
    // floor((2a + b) / 2b) for b > 0, symmetric otherwise
    if (b.sign() < 0)
        return round_div(-a, -b);
    return floor_div(a * Integer(2) + b, b * Integer(2));
}

Integer gcd(const Integer& a, const Integer& b)
{
    if (a.is_small() && b.is_small() && a.small() != std::numeric_limits<int64_t>::min() &&
        b.small() != std::numeric_limits<int64_t>::min()) {
        int64_t x = a.small() < 0 ? -a.small() : a.small();
        int64_t y = b.small() < 0 ? -b.small() : b.small();
        while (y != 0) {
            int64_t t = x % y;
            x = y;
            y = t;
        }
        return Integer(static_cast<long long>(x));
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Integer(g);
}

Integer lcm(const Integer& a, const Integer& b)
{
    if (a.is_zero() || b.is_zero())
        return Integer(0);
    return abs(a / gcd(a, b) * b);
}

bool divides(const Integer& d, const Integer& a)
{
    if (d.is_zero())
        return a.is_zero();
    return (a % d).is_zero();
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b)
{
    if (a.is_small() && b.is_small() && a.bit_length() < 62 && b.bit_length() < 62) {
        int64_t old_r = a.small(), r = b.small();
        int64_t old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            int64_t q = old_r / r;
            int64_t tmp = old_r - q * r;
            old_r = r;
            r = tmp;
            tmp = old_s - q * s;
            old_s = s;
            s = tmp;
            tmp = old_t - q * t;
            old_t = t;
            t = tmp;
        }
        if (old_r < 0) {
            old_r = -old_r;
            old_s = -old_s;
            old_t = -old_t;
        }
        return {Integer(static_cast<long long>(old_r)), Integer(static_cast<long long>(old_s)),
                Integer(static_cast<long long>(old_t))};
    }
    mpz_class g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return {Integer(g), Integer(x), Integer(y)};
}

Integer pow(const Integer& base, unsigned exp)
{
    Integer result(1);
    for (unsigned i = 0; i < exp; ++i)
        result *= base;
    return result;
}

} // namespace h3
