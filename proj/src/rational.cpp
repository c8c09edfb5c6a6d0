#include "schedsim/rational.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace schedsim {

namespace {

__extension__ typedef __int128 wide;

std::int64_t narrow(wide v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("rational overflow");
    return static_cast<std::int64_t>(v);
}

wide gcd_wide(wide a, wide b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational make(wide num, wide den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const wide g = gcd_wide(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational(narrow(num), narrow(den));
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    wide n = num, d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const wide g = gcd_wide(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = narrow(n);
    den_ = narrow(d);
}

Rational operator+(const Rational& a, const Rational& b)
{
    return make(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b)
{
    return make(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b)
{
    return make(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b)
{
    return make(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept
{
    const wide l = wide(a.num_) * b.den_;
    const wide r = wide(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less : l > r ? std::strong_ordering::greater : std::strong_ordering::equal;
}

bool Rational::is_terminating() const noexcept
{
    auto d = den_;
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    return d == 1;
}

namespace {

std::string to_str(wide v)
{
    if (v == 0) return "0";
    const bool neg = v < 0;
    if (neg) v = -v;
    std::string s;
    while (v > 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return neg ? "-" + s : s;
}

// |num|/den scaled by 10^places, integer part and remainder.
std::string render(wide num, wide den, int places, bool round)
{
    const bool neg = num < 0;
    if (neg) num = -num;
    wide scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    wide scaled = num * scale / den;
    const wide rest = num * scale % den;
    if (round && rest * 2 >= den) ++scaled;

    std::string whole = to_str(scaled / scale);
    std::string frac = places == 0 ? std::string{} : to_str(scaled % scale);
    if (frac.size() < static_cast<std::size_t>(places)) frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    std::string out = (neg && scaled != 0 ? "-" : "") + whole;
    if (!frac.empty()) out += "." + frac;
    return out;
}

} // namespace

std::string Rational::to_string() const
{
    if (!is_terminating()) return std::to_string(num_) + "/" + std::to_string(den_);
    int places = 0;
    wide scale = 1;
    while ((wide(num_) * scale) % den_ != 0) {
        scale *= 10;
        ++places;
    }
    return render(num_, den_, places, false);
}

std::string Rational::to_decimal(int places) const
{
    if (places < 0 || places > 18) throw std::invalid_argument("decimal places out of range");
    return render(num_, den_, places, true);
}

std::optional<Rational> Rational::parse(std::string_view text)
{
    auto parse_int = [](std::string_view s, bool allow_sign) -> std::optional<wide> {
        bool neg = false;
        if (allow_sign && !s.empty() && s.front() == '-') {
            neg = true;
            s.remove_prefix(1);
        }
        if (s.empty() || s.size() > 18) return std::nullopt;
        wide v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') return std::nullopt;
            v = v * 10 + (c - '0');
        }
        return neg ? -v : v;
    };

    try {
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            auto n = parse_int(text.substr(0, slash), true);
            auto d = parse_int(text.substr(slash + 1), false);
            if (!n || !d || *d == 0) return std::nullopt;
            return make(*n, *d);
        }
        const auto dot = text.find('.');
        auto whole = parse_int(text.substr(0, dot), true);
        if (!whole) return std::nullopt;
        if (dot == std::string_view::npos) return make(*whole, 1);
        const auto frac_text = text.substr(dot + 1);
        auto frac = parse_int(frac_text, false);
        if (!frac) return std::nullopt;
        wide scale = 1;
        for (std::size_t i = 0; i < frac_text.size(); ++i) scale *= 10;
        const bool neg = !text.empty() && text.front() == '-';
        const wide magnitude = (neg ? -*whole : *whole) * scale + *frac;
        return make(neg ? -magnitude : magnitude, scale);
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

} // namespace schedsim
