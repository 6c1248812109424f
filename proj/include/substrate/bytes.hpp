#pragma once

// Canonical byte serialization. Dataset equality throughout the framework is
// bit-equality of these encodings, so the layout is frozen: integers are
// fixed-width little-endian, floats are IEEE-754 bit patterns, strings are a
// u32 length followed by raw bytes.

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace substrate {

class ByteWriter {
public:
    void u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) data_.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xFF));
    }
    void u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) data_.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xFF));
    }
    void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }
    void raw(std::string_view s) {
        data_.insert(data_.end(), s.begin(), s.end());
    }
    void str(std::string_view s) {
        u32(static_cast<uint32_t>(s.size()));
        raw(s);
    }

    const std::vector<uint8_t>& bytes() const { return data_; }
    std::vector<uint8_t> take() { return std::move(data_); }

private:
    std::vector<uint8_t> data_;
};

// Cursor over a canonical encoding; throws std::out_of_range past the end.
class ByteReader {
public:
    explicit ByteReader(const std::vector<uint8_t>& data) : data_(data) {}

    uint32_t u32() {
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(byte()) << (8 * i);
        return v;
    }
    uint64_t u64() {
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(byte()) << (8 * i);
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string str() {
        uint32_t n = u32();
        return fixed(n);
    }
    std::string fixed(size_t n) {
        if (pos_ + n > data_.size()) throw std::out_of_range("byte reader overrun");
        std::string s(data_.begin() + pos_, data_.begin() + pos_ + n);
        pos_ += n;
        return s;
    }
    bool done() const { return pos_ == data_.size(); }

private:
    uint8_t byte() {
        if (pos_ >= data_.size()) throw std::out_of_range("byte reader overrun");
        return data_[pos_++];
    }
    const std::vector<uint8_t>& data_;
    size_t pos_ = 0;
};

inline uint64_t fnv1a64(const std::vector<uint8_t>& data) {
    uint64_t h = 1469598103934665603ULL;
    for (uint8_t b : data) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex16(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return s;
}

inline std::string digest_hex(const std::vector<uint8_t>& data) { return hex16(fnv1a64(data)); }

} // namespace substrate
