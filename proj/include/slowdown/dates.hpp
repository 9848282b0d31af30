#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace slowdown {

/// Calendar day, stored as days since 1970-01-01 (proleptic Gregorian).
/// Cheap value type; one day == one unit, so date arithmetic is integer
/// arithmetic.
class Date {
public:
    Date() = default;
    explicit constexpr Date(std::int32_t days_since_epoch) : days_(days_since_epoch) {}

    static Date from_ymd(int year, int month, int day);

    /// Parses strict ISO-8601 "YYYY-MM-DD". Throws std::invalid_argument on
    /// malformed text or an invalid calendar day.
    static Date parse(const std::string& iso);

    std::string to_string() const;  // "YYYY-MM-DD"
    void to_ymd(int& year, int& month, int& day) const;

    constexpr std::int32_t days_since_epoch() const { return days_; }

    friend constexpr auto operator<=>(Date, Date) = default;
    friend constexpr Date operator+(Date d, std::int32_t n) { return Date(d.days_ + n); }
    friend constexpr Date operator-(Date d, std::int32_t n) { return Date(d.days_ - n); }
    friend constexpr std::int32_t operator-(Date a, Date b) { return a.days_ - b.days_; }
    Date& operator+=(std::int32_t n) { days_ += n; return *this; }
    Date& operator++() { ++days_; return *this; }

private:
    std::int32_t days_ = 0;
};

}  // namespace slowdown
