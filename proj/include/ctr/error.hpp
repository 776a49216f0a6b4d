#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ctr {

enum class errc {
    malformed_line,
    non_monotone_timestamps,
    trip_too_short,
    timestamp_out_of_range,
    empty_dataset,
    position_out_of_range,
    rank_out_of_range,
    symbol_out_of_range,
    range_invalid,
    precondition_violated,
    empty_alphabet,
    length_mismatch,
    window_invalid,
    model_invalid,
    configuration_unsupported,
    pattern_unsupported,
    corrupt_index,
    io_failure,
};

constexpr std::string_view to_string(errc e) noexcept {
    switch (e) {
        case errc::malformed_line: return "MalformedLine";
        case errc::non_monotone_timestamps: return "NonMonotoneTimestamps";
        case errc::trip_too_short: return "TripTooShort";
        case errc::timestamp_out_of_range: return "TimestampOutOfRange";
        case errc::empty_dataset: return "EmptyDataset";
        case errc::position_out_of_range: return "PositionOutOfRange";
        case errc::rank_out_of_range: return "RankOutOfRange";
        case errc::symbol_out_of_range: return "SymbolOutOfRange";
        case errc::range_invalid: return "RangeInvalid";
        case errc::precondition_violated: return "PreconditionViolated";
        case errc::empty_alphabet: return "EmptyAlphabet";
        case errc::length_mismatch: return "LengthMismatch";
        case errc::window_invalid: return "WindowInvalid";
        case errc::model_invalid: return "ModelInvalid";
        case errc::configuration_unsupported: return "ConfigurationUnsupported";
        case errc::pattern_unsupported: return "PatternUnsupported";
        case errc::corrupt_index: return "CorruptIndex";
        case errc::io_failure: return "IoFailure";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace ctr
