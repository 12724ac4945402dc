#include "skg/wire.hpp"

#include <cmath>

#include "skg/errors.hpp"

namespace skg {

namespace {

constexpr std::uint16_t kMagic = 0x4B47;
constexpr double kInvSqrt2 = 0.70710678118654752440;

void push_byte(std::vector<std::uint8_t>& bytes, std::uint8_t b) { bytes.push_back(b); }

void push_u16(std::vector<std::uint8_t>& bytes, std::uint16_t v) {
    push_byte(bytes, static_cast<std::uint8_t>(v >> 8));
    push_byte(bytes, static_cast<std::uint8_t>(v & 0xFF));
}

void push_u32(std::vector<std::uint8_t>& bytes, std::uint32_t v) {
    push_byte(bytes, static_cast<std::uint8_t>(v >> 24));
    push_byte(bytes, static_cast<std::uint8_t>((v >> 16) & 0xFF));
    push_byte(bytes, static_cast<std::uint8_t>((v >> 8) & 0xFF));
    push_byte(bytes, static_cast<std::uint8_t>(v & 0xFF));
}

void push_field(std::vector<std::uint8_t>& bytes, const std::string& s) {
    if (s.size() > 0xFFFF) throw FieldTooLongError("field exceeds 65535 bytes");
    push_u16(bytes, static_cast<std::uint16_t>(s.size()));
    for (char c : s) push_byte(bytes, static_cast<std::uint8_t>(c));
}

bool valid_utf8(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t extra;
        if (c < 0x80) extra = 0;
        else if ((c & 0xE0) == 0xC0) extra = 1;
        else if ((c & 0xF0) == 0xE0) extra = 2;
        else if ((c & 0xF8) == 0xF0) extra = 3;
        else return false;
        if (i + extra >= s.size()) {
            if (extra > 0) return false;
        }
        for (std::size_t j = 1; j <= extra; ++j)
            if ((static_cast<unsigned char>(s[i + j]) & 0xC0) != 0x80) return false;
        i += extra + 1;
    }
    return true;
}

class BitReader {
  public:
    explicit BitReader(const std::vector<std::uint8_t>& bits) : bits_(bits) {}

    bool read_byte(std::uint8_t& out) {
        if (pos_ + 8 > bits_.size()) return false;
        out = 0;
        for (int i = 0; i < 8; ++i) out = static_cast<std::uint8_t>((out << 1) | (bits_[pos_++] & 1));
        return true;
    }
    bool read_u16(std::uint16_t& out) {
        std::uint8_t hi, lo;
        if (!read_byte(hi) || !read_byte(lo)) return false;
        out = static_cast<std::uint16_t>((hi << 8) | lo);
        return true;
    }
    bool read_u32(std::uint32_t& out) {
        std::uint16_t hi, lo;
        if (!read_u16(hi) || !read_u16(lo)) return false;
        out = (static_cast<std::uint32_t>(hi) << 16) | lo;
        return true;
    }
    bool read_string(std::size_t len, std::string& out) {
        if (pos_ + 8 * len > bits_.size()) return false;
        out.clear();
        out.reserve(len);
        for (std::size_t i = 0; i < len; ++i) {
            std::uint8_t b;
            read_byte(b);
            out.push_back(static_cast<char>(b));
        }
        return true;
    }

  private:
    const std::vector<std::uint8_t>& bits_;
    std::size_t pos_ = 0;
};

}  // namespace

BitStream serialize_kg(const KnowledgeGraph& g) {
    std::vector<std::uint8_t> bytes;
    push_u16(bytes, kMagic);
    push_u32(bytes, static_cast<std::uint32_t>(g.triples.size()));
    push_byte(bytes, 0);  // pad_bits; byte-aligned body keeps this 0
    for (const auto& t : g.triples) {
        push_field(bytes, t[0]);
        push_field(bytes, t[1]);
        push_field(bytes, t[2]);
    }
    BitStream out;
    out.bits.reserve(bytes.size() * 8);
    for (std::uint8_t b : bytes)
        for (int i = 7; i >= 0; --i) out.bits.push_back((b >> i) & 1);
    if (out.bits.size() % 2 != 0) {
        out.bits.push_back(0);
        out.pad_bits = 1;
    }
    return out;
}

DecodeResult deserialize_kg(const BitStream& bits) {
    DecodeResult res;
    BitReader r(bits.bits);
    std::uint16_t magic;
    if (!r.read_u16(magic)) {
        res.error = DecodeError::Truncated;
        return res;
    }
    if (magic != kMagic) {
        res.error = DecodeError::BadMagic;
        return res;
    }
    std::uint32_t count;
    std::uint8_t pad;
    if (!r.read_u32(count) || !r.read_byte(pad)) {
        res.error = DecodeError::Truncated;
        return res;
    }
    for (std::uint32_t i = 0; i < count; ++i) {
        std::array<std::string, 3> triple;
        for (int f = 0; f < 3; ++f) {
            std::uint16_t len;
            if (!r.read_u16(len) || !r.read_string(len, triple[f])) {
                res.error = DecodeError::Truncated;
                return res;
            }
            if (!valid_utf8(triple[f])) {
                res.error = DecodeError::InvalidUtf8;
                return res;
            }
        }
        res.graph.triples.push_back(std::move(triple));
    }
    res.ok = true;
    return res;
}

std::vector<Complex> qpsk_modulate(const BitStream& bits) {
    if (bits.bits.size() % 2 != 0)
        throw std::invalid_argument("qpsk_modulate: odd bit count");
    std::vector<Complex> out;
    out.reserve(bits.bits.size() / 2);
    for (std::size_t i = 0; i < bits.bits.size(); i += 2) {
        const int b0 = bits.bits[i], b1 = bits.bits[i + 1];
        // 00->(+,+), 01->(-,+), 11->(-,-), 10->(+,-): second bit flips the real
        // axis, first bit flips the imaginary axis.
        const double re = (b1 == 0) ? kInvSqrt2 : -kInvSqrt2;
        const double im = (b0 == 0) ? kInvSqrt2 : -kInvSqrt2;
        out.emplace_back(re, im);
    }
    return out;
}

BitStream qpsk_demodulate(const std::vector<Complex>& symbols) {
    BitStream out;
    out.bits.reserve(symbols.size() * 2);
    for (const auto& s : symbols) {
        // Ties on an axis resolve toward the positive component.
        out.bits.push_back(s.imag() >= 0 ? 0 : 1);
        out.bits.push_back(s.real() >= 0 ? 0 : 1);
    }
    return out;
}

std::vector<Complex> SymbolFrame::flatten(bool drop_padding) const {
    std::vector<Complex> out;
    out.reserve(total_symbols());
    for (const auto& p : packets) out.insert(out.end(), p.begin(), p.end());
    if (drop_padding && pad_symbols > 0) out.resize(out.size() - pad_symbols);
    return out;
}

SymbolFrame packetize(const std::vector<Complex>& symbols, std::size_t blocks_m,
                      std::size_t block_n, std::size_t per_packet_x) {
    if (per_packet_x < 1) throw std::invalid_argument("packetize: per_packet_x must be >= 1");
    if (symbols.size() != blocks_m * block_n)
        throw std::invalid_argument("packetize: symbol count does not equal M*N");
    SymbolFrame frame;
    frame.blocks_m = blocks_m;
    frame.block_n = block_n;
    frame.per_packet_x = per_packet_x;
    const std::size_t total = symbols.size();
    const std::size_t num_packets = (total + per_packet_x - 1) / per_packet_x;  // ceil
    frame.pad_symbols = num_packets * per_packet_x - total;
    frame.packets.resize(num_packets);
    for (std::size_t p = 0; p < num_packets; ++p) {
        frame.packets[p].assign(per_packet_x, Complex(0.0, 0.0));
        for (std::size_t i = 0; i < per_packet_x; ++i) {
            const std::size_t idx = p * per_packet_x + i;
            if (idx < total) frame.packets[p][i] = symbols[idx];
        }
    }
    return frame;
}

}  // namespace skg
