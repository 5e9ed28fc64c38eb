#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace txgraph {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact decimal amount: integer mantissa with a base-10 scale.
/// Token amounts never touch binary floating point, so aggregation is
/// associative and reproducible.
class Decimal {
public:
    using Int = boost::multiprecision::cpp_int;

    Decimal() : units_(0), scale_(0) {}
    explicit Decimal(std::int64_t whole) : units_(whole), scale_(0) {}
    Decimal(Int units, int scale) : units_(std::move(units)), scale_(scale) { normalize(); }

    // Accepts [+-]digits[.digits]; throws ParseError otherwise.
    static Decimal parse(const std::string& text);

    Decimal operator+(const Decimal& rhs) const;
    Decimal operator-(const Decimal& rhs) const;
    Decimal operator*(const Decimal& rhs) const;
    Decimal& operator+=(const Decimal& rhs) { *this = *this + rhs; return *this; }

    std::strong_ordering operator<=>(const Decimal& rhs) const;
    bool operator==(const Decimal& rhs) const { return (*this <=> rhs) == 0; }

    bool negative() const { return units_ < 0; }
    bool is_zero() const { return units_ == 0; }

    // Quotient truncated to `scale` fractional digits. Throws DataError
    // on division by zero.
    Decimal div(const Decimal& rhs, int scale) const;

    std::string to_string() const;
    double to_double() const;

private:
    void normalize();

    Int units_;
    int scale_;  // digits after the decimal point, >= 0
};

}  // namespace txgraph
