#include "schedsim/time.hpp"

#include <limits>

namespace schedsim {

std::string_view describe(DecimalError e) noexcept
{
    switch (e) {
    case DecimalError::malformed: return "not a decimal number";
    case DecimalError::negative: return "must not be negative";
    case DecimalError::too_many_fraction_digits: return "more than 3 fractional digits";
    case DecimalError::out_of_range: return "value too large";
    }
    return "unknown error";
}

namespace {

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

} // namespace

ParsedTicks parse_ms(std::string_view text) noexcept
{
    ParsedTicks out;
    if (text.empty()) return out;

    bool negative = false;
    if (text.front() == '-') {
        negative = true;
        text.remove_prefix(1);
        if (text.empty()) return out;
    }

    const auto dot = text.find('.');
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);

    if (whole.empty()) return out;
    if (dot != std::string_view::npos && frac.empty()) return out;
    for (char c : whole)
        if (!is_digit(c)) return out;
    for (char c : frac)
        if (!is_digit(c)) return out;

    if (negative) {
        out.error = DecimalError::negative;
        return out;
    }
    if (frac.size() > 3) {
        out.error = DecimalError::too_many_fraction_digits;
        return out;
    }

    // Keeps ms * 1000 and the doubling headroom well inside int64.
    constexpr Ticks::rep max_whole = std::numeric_limits<Ticks::rep>::max() / Ticks::per_ms / 4;
    Ticks::rep ms = 0;
    for (char c : whole) {
        ms = ms * 10 + (c - '0');
        if (ms > max_whole) {
            out.error = DecimalError::out_of_range;
            return out;
        }
    }

    Ticks::rep sub = 0;
    for (std::size_t i = 0; i < 3; ++i)
        sub = sub * 10 + (i < frac.size() ? frac[i] - '0' : 0);

    out.ticks = Ticks{ms * Ticks::per_ms + sub};
    return out;
}

std::string format_ms(Ticks t)
{
    auto v = t.count();
    std::string out;
    if (v < 0) {
        out.push_back('-');
        v = -v;
    }
    out += std::to_string(v / Ticks::per_ms);
    auto sub = v % Ticks::per_ms;
    if (sub != 0) {
        std::string digits = std::to_string(sub);
        digits.insert(0, 3 - digits.size(), '0');
        while (digits.back() == '0') digits.pop_back();
        out.push_back('.');
        out += digits;
    }
    return out;
}

} // namespace schedsim
