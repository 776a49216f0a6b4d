#pragma once

#include <chrono>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ctr/io/binary.hpp"
#include "ctr/trip/raw_trip.hpp"

namespace ctr::trip {

enum class time_mode : std::uint8_t { linear, cyclic_day, cyclic_week, day_types };

constexpr std::string_view to_string(time_mode m) noexcept {
    switch (m) {
        case time_mode::linear: return "linear";
        case time_mode::cyclic_day: return "cyclic-day";
        case time_mode::cyclic_week: return "cyclic-week";
        case time_mode::day_types: return "day-types";
    }
    return "?";
}

inline std::optional<time_mode> parse_time_mode(std::string_view s) {
    for (auto m : {time_mode::linear, time_mode::cyclic_day, time_mode::cyclic_week, time_mode::day_types})
        if (to_string(m) == s) return m;
    return std::nullopt;
}

inline constexpr std::uint64_t seconds_per_day = 86400;
inline constexpr unsigned max_day_classes = 8;

/// Maps epoch seconds to time codes in [0, sigma()).
///
/// linear: floor((ts - origin) / interval), sigma fixed by `horizon` codes.
/// cyclic-day: slot within the UTC day. cyclic-week: weekday (Mon = 0) * slots
/// + slot. day-types: class * slots + slot, where the class comes from the
/// day table and defaults to the weekday.
struct time_discretizer {
    std::uint32_t interval_minutes = 5;
    time_mode mode = time_mode::linear;
    std::uint64_t origin = 0;
    std::uint64_t horizon = 0;  // linear only; 0 until resolved from data
    std::map<std::int64_t, std::uint8_t> day_table;

    std::uint64_t interval_seconds() const noexcept { return std::uint64_t(interval_minutes) * 60; }

    std::uint64_t slots_per_day() const noexcept {
        return (seconds_per_day + interval_seconds() - 1) / interval_seconds();
    }

    std::uint64_t sigma() const {
        check();
        switch (mode) {
            case time_mode::linear: return horizon;
            case time_mode::cyclic_day: return slots_per_day();
            case time_mode::cyclic_week: return 7 * slots_per_day();
            case time_mode::day_types: return max_day_classes * slots_per_day();
        }
        return 0;
    }

    static unsigned weekday(std::uint64_t ts) noexcept { return static_cast<unsigned>((ts / seconds_per_day + 3) % 7); }

    unsigned day_class(std::uint64_t ts) const {
        auto it = day_table.find(static_cast<std::int64_t>(ts / seconds_per_day));
        return it == day_table.end() ? weekday(ts) : it->second;
    }

    std::uint64_t code(std::uint64_t ts) const {
        check();
        const auto slot = (ts % seconds_per_day) / interval_seconds();
        switch (mode) {
            case time_mode::linear: {
                if (ts < origin) fail(errc::timestamp_out_of_range, "timestamp " + std::to_string(ts) + " before origin");
                auto c = (ts - origin) / interval_seconds();
                if (horizon != 0 && c >= horizon)
                    fail(errc::timestamp_out_of_range, "timestamp " + std::to_string(ts) + " beyond horizon");
                return c;
            }
            case time_mode::cyclic_day: return slot;
            case time_mode::cyclic_week: return weekday(ts) * slots_per_day() + slot;
            case time_mode::day_types: return day_class(ts) * slots_per_day() + slot;
        }
        return 0;
    }

    /// Fixes an unset linear horizon to cover every timestamp in `trips`.
    time_discretizer resolved(std::span<const raw_trip> trips) const {
        auto d = *this;
        if (d.mode == time_mode::linear && d.horizon == 0) {
            std::uint64_t top = 0;
            for (const auto& t : trips)
                for (auto ts : t.timestamps) {
                    if (ts < origin) fail(errc::timestamp_out_of_range, "timestamp " + std::to_string(ts) + " before origin");
                    top = std::max(top, (ts - origin) / interval_seconds());
                }
            d.horizon = top + 1;
        }
        return d;
    }

    std::string describe() const {
        std::string s = std::string(to_string(mode)) + "/" + std::to_string(interval_minutes) + "min";
        if (mode == time_mode::linear) s += " origin=" + std::to_string(origin) + " horizon=" + std::to_string(horizon);
        if (mode == time_mode::day_types) s += " table=" + std::to_string(day_table.size()) + "d";
        return s;
    }

    void save(io::binary_writer& w) const {
        w.u32(interval_minutes);
        w.u8(static_cast<std::uint8_t>(mode));
        w.u64(origin);
        w.u64(horizon);
        w.u64(day_table.size());
        for (auto [day, cls] : day_table) {
            w.u64(static_cast<std::uint64_t>(day));
            w.u8(cls);
        }
    }

    static time_discretizer load(io::binary_reader& r) {
        time_discretizer d;
        d.interval_minutes = r.u32();
        auto m = r.u8();
        if (m > static_cast<std::uint8_t>(time_mode::day_types)) fail(errc::corrupt_index, "time mode");
        d.mode = static_cast<time_mode>(m);
        d.origin = r.u64();
        d.horizon = r.u64();
        auto entries = r.u64();
        if (entries > r.remaining() / 9) fail(errc::corrupt_index, "day table length");
        for (std::uint64_t e = 0; e < entries; ++e) {
            auto day = static_cast<std::int64_t>(r.u64());
            d.day_table[day] = r.u8();
        }
        try {
            d.check();
        } catch (const error& e) {
            fail(errc::corrupt_index, e.what());
        }
        return d;
    }

    bool operator==(const time_discretizer&) const = default;

private:
    void check() const {
        if (interval_minutes == 0) fail(errc::configuration_unsupported, "interval must be positive");
        for (auto [day, cls] : day_table)
            if (cls >= max_day_classes) fail(errc::configuration_unsupported, "day class " + std::to_string(cls) + " >= 8");
    }
};

/// Reads `YYYY-MM-DD class` lines ('#' comments allowed) into a day table.
inline std::map<std::int64_t, std::uint8_t> parse_day_table(std::istream& in) {
    std::map<std::int64_t, std::uint8_t> table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view v(line);
        auto first = v.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || v[first] == '#') continue;
        v.remove_prefix(first);
        auto sp = v.find_first_of(" \t");
        auto bad = [&] { fail(errc::malformed_line, "day table line " + std::to_string(line_no)); };
        if (sp == std::string_view::npos || sp != 10 || v[4] != '-' || v[7] != '-') bad();
        auto y = detail::parse_u64(v.substr(0, 4), line_no);
        auto mo = detail::parse_u64(v.substr(5, 2), line_no);
        auto dd = detail::parse_u64(v.substr(8, 2), line_no);
        auto rest = v.substr(sp);
        auto c0 = rest.find_first_not_of(" \t");
        if (c0 == std::string_view::npos) bad();
        rest.remove_prefix(c0);
        while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t' || rest.back() == '\r')) rest.remove_suffix(1);
        auto cls = detail::parse_u64(rest, line_no);
        std::chrono::year_month_day ymd{std::chrono::year(static_cast<int>(y)), std::chrono::month(static_cast<unsigned>(mo)),
                                        std::chrono::day(static_cast<unsigned>(dd))};
        if (!ymd.ok()) bad();
        if (cls >= max_day_classes) fail(errc::configuration_unsupported, "day class " + std::to_string(cls) + " >= 8");
        table[std::chrono::sys_days(ymd).time_since_epoch().count()] = static_cast<std::uint8_t>(cls);
    }
    return table;
}

}  // namespace ctr::trip
