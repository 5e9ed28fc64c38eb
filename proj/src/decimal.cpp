#include "txgraph/decimal.hpp"

#include <cmath>

namespace txgraph {

namespace {

Decimal::Int pow10(int n) {
    Decimal::Int r = 1;
    for (int i = 0; i < n; ++i) r *= 10;
    return r;
}

}  // namespace

void Decimal::normalize() {
    while (scale_ > 0 && units_ % 10 == 0) {
        units_ /= 10;
        --scale_;
    }
    if (units_ == 0) scale_ = 0;
}

Decimal Decimal::parse(const std::string& text) {
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    std::string digits;
    int scale = 0;
    bool whole_digit = false, seen_dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (seen_dot)
                ++scale;
            else
                whole_digit = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            throw ParseError("invalid decimal: " + text);
        }
    }
    // Grammar is [+-]digits[.digits]: both sides of a dot must be present.
    if (!whole_digit || (seen_dot && scale == 0))
        throw ParseError("invalid decimal: " + text);
    // Strip leading zeros: cpp_int's string constructor would read the
    // digit run as octal otherwise.
    std::size_t nz = digits.find_first_not_of('0');
    Int units(nz == std::string::npos ? "0" : digits.substr(nz));
    if (neg) units = -units;
    return Decimal(std::move(units), scale);
}

Decimal Decimal::operator+(const Decimal& rhs) const {
    int s = std::max(scale_, rhs.scale_);
    Int a = units_ * pow10(s - scale_);
    Int b = rhs.units_ * pow10(s - rhs.scale_);
    return Decimal(a + b, s);
}

Decimal Decimal::operator-(const Decimal& rhs) const {
    int s = std::max(scale_, rhs.scale_);
    Int a = units_ * pow10(s - scale_);
    Int b = rhs.units_ * pow10(s - rhs.scale_);
    return Decimal(a - b, s);
}

Decimal Decimal::operator*(const Decimal& rhs) const {
    return Decimal(units_ * rhs.units_, scale_ + rhs.scale_);
}

std::strong_ordering Decimal::operator<=>(const Decimal& rhs) const {
    int s = std::max(scale_, rhs.scale_);
    Int a = units_ * pow10(s - scale_);
    Int b = rhs.units_ * pow10(s - rhs.scale_);
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Decimal Decimal::div(const Decimal& rhs, int scale) const {
    if (rhs.units_ == 0) throw DataError("decimal division by zero");
    // this/rhs = units*10^(rhs.scale - scale_) / rhs.units, scaled out to `scale`.
    Int num = units_ * pow10(rhs.scale_ + scale);
    Int den = rhs.units_ * pow10(scale_);
    return Decimal(num / den, scale);
}

std::string Decimal::to_string() const {
    Int abs = units_ < 0 ? Int(-units_) : units_;
    std::string s = abs.str();
    if (scale_ > 0) {
        if (static_cast<int>(s.size()) <= scale_)
            s.insert(0, scale_ + 1 - s.size(), '0');
        s.insert(s.size() - scale_, ".");
    }
    if (units_ < 0) s.insert(0, "-");
    return s;
}

double Decimal::to_double() const {
    return units_.convert_to<double>() / std::pow(10.0, scale_);
}

}  // namespace txgraph
