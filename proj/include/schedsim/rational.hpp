#ifndef SCHEDSIM_RATIONAL_HPP
#define SCHEDSIM_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace schedsim {

/// Exact fraction in lowest terms with a positive denominator. Arithmetic
/// throws std::overflow_error rather than wrapping.
class Rational {
public:
    constexpr Rational() noexcept = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

    /// True when the value has a finite decimal expansion.
    bool is_terminating() const noexcept;

    /// Exact text: minimal decimal ("46.8", "21.2562", "34") when
    /// terminating, "num/den" otherwise. parse() inverts it.
    std::string to_string() const;

    /// Decimal rounded half away from zero to `places` fractional digits,
    /// trailing zeros trimmed.
    std::string to_decimal(int places) const;

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Accepts "-12", "46.8", "5/33".
    static std::optional<Rational> parse(std::string_view text);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace schedsim

#endif // SCHEDSIM_RATIONAL_HPP
