#include "unmac/remoteid.hpp"

#include <cctype>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace unmac::remoteid {
namespace {

// Field offsets; see docs/wire-format.md.
constexpr std::size_t kOffTag = 0;
constexpr std::size_t kOffId = 1;
constexpr std::size_t kOffEast = 21;
constexpr std::size_t kOffNorth = 25;
constexpr std::size_t kOffAlt = 29;
constexpr std::size_t kOffSpeed = 33;
constexpr std::size_t kOffEmergency = 35;
constexpr std::size_t kOffTimeMark = 36;
constexpr std::size_t kOffStationEast = 40;
constexpr std::size_t kOffStationNorth = 44;
constexpr std::size_t kOffStationAlt = 48;
constexpr std::size_t kOffExt = 52;
constexpr std::size_t kReservedLength = 4;

struct ExtensionLayout {
    bool af;
    bool loc;
    bool heading;
};

constexpr ExtensionLayout layout_for(FormatTag tag) {
    switch (tag) {
        case FormatTag::Standard:
            return {false, false, false};
        case FormatTag::Candidate1:
            return {false, true, false};
        case FormatTag::Candidate2:
            return {true, true, false};
        case FormatTag::Candidate3:
            break;
    }
    return {true, true, true};
}

class Writer {
public:
    explicit Writer(std::size_t n) { buf_.reserve(n); }

    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u16(std::uint16_t v) {
        for (int k = 0; k < 2; ++k) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
    }
    void u32(std::uint32_t v) {
        for (int k = 0; k < 4; ++k) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
    }
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }

    std::vector<std::uint8_t> take() { return std::move(buf_); }

private:
    std::vector<std::uint8_t> buf_;
};

// Callers check the total length up front, so reads are unchecked here.
class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}

    std::uint8_t u8(std::size_t off) const { return b_[off]; }
    std::uint16_t u16(std::size_t off) const {
        return static_cast<std::uint16_t>(b_[off] | (b_[off + 1] << 8));
    }
    std::uint32_t u32(std::size_t off) const {
        std::uint32_t v = 0;
        for (int k = 3; k >= 0; --k) v = (v << 8) | b_[off + static_cast<std::size_t>(k)];
        return v;
    }
    std::int32_t i32(std::size_t off) const { return static_cast<std::int32_t>(u32(off)); }

private:
    std::span<const std::uint8_t> b_;
};

ParseError out_of_range(std::size_t offset, std::string detail) {
    return ParseError{ParseErrorCode::OutOfRange, offset, std::move(detail)};
}

}  // namespace

std::optional<FormatTag> tag_for(MessageFormat format) {
    switch (format) {
        case MessageFormat::StandardRemoteId:
            return FormatTag::Standard;
        case MessageFormat::Candidate1:
            return FormatTag::Candidate1;
        case MessageFormat::Candidate2:
            return FormatTag::Candidate2;
        case MessageFormat::Candidate3:
            return FormatTag::Candidate3;
        case MessageFormat::PerfectKnowledge:
            break;
    }
    return std::nullopt;
}

MessageFormat format_of(FormatTag tag) {
    switch (tag) {
        case FormatTag::Standard:
            return MessageFormat::StandardRemoteId;
        case FormatTag::Candidate1:
            return MessageFormat::Candidate1;
        case FormatTag::Candidate2:
            return MessageFormat::Candidate2;
        case FormatTag::Candidate3:
            break;
    }
    return MessageFormat::Candidate3;
}

std::size_t message_length(FormatTag tag) {
    const auto l = layout_for(tag);
    return kStandardLength + (l.af ? 2 : 0) + (l.loc ? 2 : 0) + (l.heading ? 2 + kReservedLength : 0);
}

std::int32_t to_centimeters(double meters) {
    const double cm = std::round(meters * 100.0);
    if (!(cm >= std::numeric_limits<std::int32_t>::min() && cm <= std::numeric_limits<std::int32_t>::max())) {
        throw std::out_of_range("value does not fit int32 centimeters");
    }
    return static_cast<std::int32_t>(cm);
}

std::uint16_t to_unsigned_centimeters(double meters) {
    const double cm = std::round(meters * 100.0);
    if (!(cm >= 0.0 && cm <= std::numeric_limits<std::uint16_t>::max())) {
        throw std::out_of_range("value does not fit uint16 centimeters");
    }
    return static_cast<std::uint16_t>(cm);
}

std::uint16_t to_heading_units(double radians) {
    double wrapped = std::fmod(radians, 2.0 * std::numbers::pi);
    if (wrapped < 0.0) wrapped += 2.0 * std::numbers::pi;
    auto units = static_cast<long>(std::lround(wrapped * 1e4));
    if (units >= kHeadingLimit) units -= kHeadingLimit;
    return static_cast<std::uint16_t>(units);
}

void validate(const RemoteIdMessage& msg) {
    const auto tag = static_cast<std::uint8_t>(msg.format);
    if (tag > static_cast<std::uint8_t>(FormatTag::Candidate3)) {
        throw EncodeError("unknown format tag " + std::to_string(tag));
    }
    const auto l = layout_for(msg.format);
    if (l.af != msg.af_size_cm.has_value()) {
        throw EncodeError("af_size presence does not match format");
    }
    if (l.loc != msg.loc_error_cm.has_value()) {
        throw EncodeError("loc_error presence does not match format");
    }
    if (l.heading != msg.heading_e4.has_value()) {
        throw EncodeError("heading presence does not match format");
    }
    if (msg.af_size_cm && (*msg.af_size_cm == 0 || *msg.af_size_cm > kAirframeLimitCm)) {
        throw EncodeError("af_size must lie in (0, 750] cm");
    }
    if (msg.heading_e4 && *msg.heading_e4 >= kHeadingLimit) {
        throw EncodeError("heading must lie in [0, 2*pi)");
    }
}

std::vector<std::uint8_t> encode(const RemoteIdMessage& msg) {
    validate(msg);
    Writer w(message_length(msg.format));
    w.u8(static_cast<std::uint8_t>(msg.format));
    w.bytes(msg.uav_id);
    w.i32(msg.east_cm);
    w.i32(msg.north_cm);
    w.i32(msg.altitude_cm);
    w.u16(msg.speed_cm_s);
    w.u8(msg.emergency ? 1 : 0);
    w.u32(msg.time_mark_ms);
    w.i32(msg.station_east_cm);
    w.i32(msg.station_north_cm);
    w.i32(msg.station_alt_cm);
    if (msg.af_size_cm) w.u16(*msg.af_size_cm);
    if (msg.loc_error_cm) w.u16(*msg.loc_error_cm);
    if (msg.heading_e4) {
        w.u16(*msg.heading_e4);
        w.u32(0);
    }
    return w.take();
}

DecodeResult decode(std::span<const std::uint8_t> bytes) {
    if (bytes.empty()) {
        return ParseError{ParseErrorCode::ShortBuffer, 0, "empty buffer"};
    }
    const std::uint8_t raw_tag = bytes[kOffTag];
    if (raw_tag > static_cast<std::uint8_t>(FormatTag::Candidate3)) {
        return ParseError{ParseErrorCode::UnknownTag, kOffTag, "unknown format tag " + std::to_string(raw_tag)};
    }
    const auto tag = static_cast<FormatTag>(raw_tag);
    const std::size_t length = message_length(tag);
    if (bytes.size() < length) {
        return ParseError{ParseErrorCode::ShortBuffer, bytes.size(),
                          "need " + std::to_string(length) + " bytes, have " + std::to_string(bytes.size())};
    }

    const Reader r(bytes);
    RemoteIdMessage m;
    m.format = tag;
    for (std::size_t k = 0; k < kIdLength; ++k) m.uav_id[k] = r.u8(kOffId + k);
    m.east_cm = r.i32(kOffEast);
    m.north_cm = r.i32(kOffNorth);
    m.altitude_cm = r.i32(kOffAlt);
    m.speed_cm_s = r.u16(kOffSpeed);
    const std::uint8_t emergency = r.u8(kOffEmergency);
    if (emergency > 1) {
        return out_of_range(kOffEmergency, "emergency flag must be 0 or 1");
    }
    m.emergency = emergency == 1;
    m.time_mark_ms = r.u32(kOffTimeMark);
    m.station_east_cm = r.i32(kOffStationEast);
    m.station_north_cm = r.i32(kOffStationNorth);
    m.station_alt_cm = r.i32(kOffStationAlt);

    const auto l = layout_for(tag);
    std::size_t off = kOffExt;
    if (l.af) {
        const auto af = r.u16(off);
        if (af == 0 || af > kAirframeLimitCm) {
            return out_of_range(off, "af_size must lie in (0, 750] cm");
        }
        m.af_size_cm = af;
        off += 2;
    }
    if (l.loc) {
        m.loc_error_cm = r.u16(off);
        off += 2;
    }
    if (l.heading) {
        const auto heading = r.u16(off);
        if (heading >= kHeadingLimit) {
            return out_of_range(off, "heading must lie in [0, 2*pi)");
        }
        m.heading_e4 = heading;
        off += 2;
        if (r.u32(off) != 0) {
            return out_of_range(off, "reserved bytes must be zero");
        }
        off += kReservedLength;
    }
    return Decoded{m, off};
}

std::string_view to_string(ParseErrorCode code) {
    switch (code) {
        case ParseErrorCode::ShortBuffer:
            return "short-buffer";
        case ParseErrorCode::UnknownTag:
            return "unknown-tag";
        case ParseErrorCode::OutOfRange:
            return "out-of-range";
    }
    return "unknown";
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

std::vector<std::uint8_t> from_hex(std::string_view text) {
    std::vector<std::uint8_t> out;
    int pending = -1;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw std::invalid_argument(std::string("invalid hex character '") + c + "'");
        if (pending < 0) {
            pending = v;
        } else {
            out.push_back(static_cast<std::uint8_t>(pending << 4 | v));
            pending = -1;
        }
    }
    if (pending >= 0) {
        throw std::invalid_argument("odd number of hex digits");
    }
    return out;
}

const std::array<BroadcastProfile, 6>& broadcast_profiles() {
    static const std::array<BroadcastProfile, 6> table{{
        {"bluetooth-le", "Bluetooth LE", 50.0, 0.010, 0.010},
        {"bluetooth", "Bluetooth", 100.0, 0.010, 0.010},
        {"lora", "LoRa", 10000.0, 5.0, 5.0},
        {"flarm", "FLARM", 10000.0, 3.0, 3.0},
        {"wifi-ssid", "Wi-Fi SSID", 1000.0, 0.016, 0.016},
        {"5g-nr-sidelink", "5G NR Sidelink", 1000.0, 0.000125, 0.001},
    }};
    return table;
}

std::optional<BroadcastProfile> find_broadcast_profile(std::string_view key) {
    for (const auto& p : broadcast_profiles()) {
        if (p.key == key) return p;
    }
    return std::nullopt;
}

double effective_interval(double loc_dt, double com_dt) {
    if (!(loc_dt > 0.0) || !(com_dt > 0.0)) {
        throw std::invalid_argument("update intervals must be positive");
    }
    return std::max(loc_dt, com_dt);
}

}  // namespace unmac::remoteid
