#ifndef SCHEDSIM_TIME_HPP
#define SCHEDSIM_TIME_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace schedsim {

/// Simulation time in integer microseconds. 1 ms = 1000 ticks.
///
/// Every time quantity in the simulator is a Ticks value; there is no
/// floating-point time anywhere downstream of parsing.
class Ticks {
public:
    using rep = std::int64_t;
    static constexpr rep per_ms = 1000;

    constexpr Ticks() noexcept = default;
    constexpr explicit Ticks(rep v) noexcept : value_(v) {}

    static constexpr Ticks from_ms(rep ms) noexcept { return Ticks{ms * per_ms}; }

    constexpr rep count() const noexcept { return value_; }

    constexpr Ticks& operator+=(Ticks o) noexcept { value_ += o.value_; return *this; }
    constexpr Ticks& operator-=(Ticks o) noexcept { value_ -= o.value_; return *this; }

    friend constexpr Ticks operator+(Ticks a, Ticks b) noexcept { return Ticks{a.value_ + b.value_}; }
    friend constexpr Ticks operator-(Ticks a, Ticks b) noexcept { return Ticks{a.value_ - b.value_}; }

    friend constexpr auto operator<=>(Ticks, Ticks) noexcept = default;

private:
    rep value_ = 0;
};

inline constexpr Ticks operator""_ms(unsigned long long ms) noexcept
{
    return Ticks::from_ms(static_cast<Ticks::rep>(ms));
}

inline constexpr Ticks operator""_us(unsigned long long us) noexcept
{
    return Ticks{static_cast<Ticks::rep>(us)};
}

/// Why a decimal millisecond string was rejected.
enum class DecimalError {
    malformed,
    negative,
    too_many_fraction_digits,
    out_of_range,
};

std::string_view describe(DecimalError e) noexcept;

/// Result of parsing "x" or "x.yyy" milliseconds; exactly one of the members is set.
struct ParsedTicks {
    std::optional<Ticks> ticks;
    DecimalError error = DecimalError::malformed;

    explicit operator bool() const noexcept { return ticks.has_value(); }
};

/// Parses a non-negative decimal millisecond value with at most three
/// fractional digits. "8.019" -> 8019 ticks. The conversion is exact.
ParsedTicks parse_ms(std::string_view text) noexcept;

/// Renders ticks as decimal milliseconds with trailing zeros trimmed:
/// 4000 -> "4", 2500 -> "2.5", 8019 -> "8.019".
std::string format_ms(Ticks t);

} // namespace schedsim

#endif // SCHEDSIM_TIME_HPP
