#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "unmac/geometry.hpp"

namespace unmac::remoteid {

// Wire tags. PerfectKnowledge is a simulation baseline, not a broadcast, and
// has no tag.
enum class FormatTag : std::uint8_t {
    Standard = 0x00,
    Candidate1 = 0x01,
    Candidate2 = 0x02,
    Candidate3 = 0x03,
};

std::optional<FormatTag> tag_for(MessageFormat format);
MessageFormat format_of(FormatTag tag);

inline constexpr std::size_t kIdLength = 20;
inline constexpr std::size_t kStandardLength = 52;
inline constexpr std::uint16_t kHeadingLimit = 62832;  // 2*pi in 1e-4 rad, exclusive
inline constexpr std::uint16_t kAirframeLimitCm = 750;

// Encoded size for a tag: 52, 54, 56, 62 bytes.
std::size_t message_length(FormatTag tag);

// All quantities are held in their wire resolution so that encode/decode is
// lossless. Use the from_* helpers to convert SI values.
struct RemoteIdMessage {
    FormatTag format = FormatTag::Standard;
    std::array<std::uint8_t, kIdLength> uav_id{};
    std::int32_t east_cm = 0;
    std::int32_t north_cm = 0;
    std::int32_t altitude_cm = 0;
    std::uint16_t speed_cm_s = 0;
    bool emergency = false;
    std::uint32_t time_mark_ms = 0;
    std::int32_t station_east_cm = 0;
    std::int32_t station_north_cm = 0;
    std::int32_t station_alt_cm = 0;

    std::optional<std::uint16_t> af_size_cm;    // Candidate2, Candidate3
    std::optional<std::uint16_t> loc_error_cm;  // Candidate1..3
    std::optional<std::uint16_t> heading_e4;    // Candidate3, 1e-4 rad in [0, 2*pi)

    friend bool operator==(const RemoteIdMessage&, const RemoteIdMessage&) = default;
};

std::int32_t to_centimeters(double meters);
std::uint16_t to_unsigned_centimeters(double meters);
std::uint16_t to_heading_units(double radians);

class EncodeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Throws EncodeError when extension presence does not match the format or a
// field is out of range.
void validate(const RemoteIdMessage& msg);
std::vector<std::uint8_t> encode(const RemoteIdMessage& msg);

enum class ParseErrorCode { ShortBuffer, UnknownTag, OutOfRange };

struct ParseError {
    ParseErrorCode code;
    std::size_t offset;  // byte offset of the offending field
    std::string detail;
};

struct Decoded {
    RemoteIdMessage message;
    std::size_t consumed;
};

using DecodeResult = std::variant<Decoded, ParseError>;

// Total: never reads past bytes.size() and never throws on malformed input.
DecodeResult decode(std::span<const std::uint8_t> bytes);

std::string_view to_string(ParseErrorCode code);

// Hex helpers for golden vectors. from_hex ignores whitespace and throws
// std::invalid_argument on anything else that is not a hex digit pair.
std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view text);

// ---- broadcast technology profiles ----------------------------------------

struct BroadcastProfile {
    std::string_view key;
    std::string_view technology;
    double range_m;
    double dt_com;      // s, best-case interval
    double dt_com_max;  // s, equals dt_com unless the technology lists a range
};

const std::array<BroadcastProfile, 6>& broadcast_profiles();
// Keys: bluetooth-le, bluetooth, lora, flarm, wifi-ssid, 5g-nr-sidelink.
std::optional<BroadcastProfile> find_broadcast_profile(std::string_view key);

// Staleness bound entering the uncertainty diameter: max(loc_dt, com_dt).
double effective_interval(double loc_dt, double com_dt);

}  // namespace unmac::remoteid
