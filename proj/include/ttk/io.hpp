#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ttk {

/// Malformed binary input. `offset` is the byte position where decoding failed.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::uint64_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::uint64_t offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Little-endian encoder.
class ByteWriter {
public:
    void magic(std::string_view tag);
    void u8(std::uint8_t v) { bytes_.push_back(v); }
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void f64(double v);
    void f64s(std::span<const double> v);

    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
};

/// Little-endian decoder; every read past the end throws ParseError.
class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    void expect_magic(std::string_view tag);
    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    double f64();
    std::vector<double> f64s(std::size_t count);

    std::size_t offset() const { return pos_; }
    std::size_t remaining() const { return bytes_.size() - pos_; }
    /// Throws unless the whole input has been consumed.
    void expect_end() const;

private:
    void need(std::size_t n, std::string_view what) const;

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace ttk
