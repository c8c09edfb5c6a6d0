#include "schedsim/time.hpp"

#include <doctest.h>

#include <random>

using namespace schedsim;

TEST_SUITE("time")
{
    TEST_CASE("decimal milliseconds convert exactly to ticks")
    {
        CHECK(parse_ms("22").ticks == 22000_us);
        CHECK(parse_ms("8.019").ticks == 8019_us);
        CHECK(parse_ms("2.4").ticks == 2400_us);
        CHECK(parse_ms("0.001").ticks == 1_us);
        CHECK(parse_ms("0").ticks == 0_us);
        CHECK(parse_ms("007.50").ticks == 7500_us);
    }

    TEST_CASE("malformed decimals are rejected with a reason")
    {
        for (const char* bad : {"", ".5", "1.", "1.2.3", "abc", "1e3", " 1", "1 ", "+1", "-"}) {
            CAPTURE(bad);
            const auto r = parse_ms(bad);
            CHECK_FALSE(r);
            CHECK(r.error == DecimalError::malformed);
        }
        CHECK(parse_ms("-1").error == DecimalError::negative);
        CHECK(parse_ms("-0.5").error == DecimalError::negative);
        CHECK(parse_ms("1.0001").error == DecimalError::too_many_fraction_digits);
        CHECK(parse_ms("99999999999999999999").error == DecimalError::out_of_range);
    }

    TEST_CASE("formatting trims trailing zeros")
    {
        CHECK(format_ms(4000_us) == "4");
        CHECK(format_ms(2500_us) == "2.5");
        CHECK(format_ms(8019_us) == "8.019");
        CHECK(format_ms(10_us) == "0.01");
        CHECK(format_ms(0_us) == "0");
        CHECK(format_ms(Ticks{-1500}) == "-1.5");
    }

    TEST_CASE("parse(x.yyy) == 1000x + yyy and format inverts parse")
    {
        std::mt19937_64 rng(1);
        for (int i = 0; i < 2000; ++i) {
            const auto whole = static_cast<Ticks::rep>(rng() % 1'000'000);
            const auto frac = static_cast<Ticks::rep>(rng() % 1000);
            std::string digits = std::to_string(frac);
            digits.insert(0, 3 - digits.size(), '0');
            const std::string text = std::to_string(whole) + "." + digits;
            CAPTURE(text);
            const auto t = parse_ms(text);
            REQUIRE(t);
            CHECK(t.ticks->count() == 1000 * whole + frac);
            CHECK(parse_ms(format_ms(*t.ticks)).ticks == t.ticks);
        }
    }
}
