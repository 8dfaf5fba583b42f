#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

namespace randflight {

/** Arbitrary-precision rational kept in canonical form: positive denominator
    and gcd(|numerator|, denominator) = 1 after every operation. All series
    summations run on this type; conversion to double happens once, at the
    end, rounded to nearest. */
class ExactRational {
public:
    ExactRational() : q_(0) {}
    ExactRational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
    ExactRational(long n, long d);
    explicit ExactRational(const mpz_class& z) : q_(z) {}
    ExactRational(const mpz_class& n, const mpz_class& d);
    explicit ExactRational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "n" or "n/d"; throws std::invalid_argument on malformed input.
    static ExactRational from_string(const std::string& s);

    [[nodiscard]] mpz_class numerator() const { return q_.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return q_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return q_; }

    /// "n/d" (or "n" when d = 1), exact.
    [[nodiscard]] std::string fraction_str() const { return q_.get_str(); }

    /// Nearest 64-bit float to the exact value.
    [[nodiscard]] double to_double() const;

    [[nodiscard]] ExactRational abs() const { return ExactRational(mpq_class(::abs(q_))); }
    [[nodiscard]] bool is_zero() const { return q_ == 0; }
    [[nodiscard]] int sign() const { return sgn(q_); }

    ExactRational& operator+=(const ExactRational& o) { q_ += o.q_; return *this; }
    ExactRational& operator-=(const ExactRational& o) { q_ -= o.q_; return *this; }
    ExactRational& operator*=(const ExactRational& o) { q_ *= o.q_; return *this; }
    ExactRational& operator/=(const ExactRational& o);

    friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
    friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
    friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
    friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }
    friend ExactRational operator-(const ExactRational& a) { return ExactRational(mpq_class(-a.q_)); }

    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const ExactRational& a, const ExactRational& b) { return a.q_ != b.q_; }
    friend bool operator<(const ExactRational& a, const ExactRational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const ExactRational& a, const ExactRational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const ExactRational& a, const ExactRational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const ExactRational& a, const ExactRational& b) { return a.q_ >= b.q_; }

private:
    mpq_class q_;
};

/** The fixed rational stand-in for pi, 314159265358979323846/100000000000000000000.
    Coefficient summations never substitute a floating-point pi for it. */
const ExactRational& pi_rational();

/// Nearest double to the exact ratio num/den (den != 0).
double to_double_nearest(const mpz_class& num, const mpz_class& den);

}  // namespace randflight
