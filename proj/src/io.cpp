#include "ttk/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace ttk {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + path.string());
    return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

void ByteWriter::magic(std::string_view tag) { bytes_.insert(bytes_.end(), tag.begin(), tag.end()); }

void ByteWriter::u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::f64s(std::span<const double> v) {
    if constexpr (std::endian::native == std::endian::little) {
        const auto* p = reinterpret_cast<const std::uint8_t*>(v.data());
        bytes_.insert(bytes_.end(), p, p + v.size_bytes());
    } else {
        for (double x : v) f64(x);
    }
}

void ByteReader::need(std::size_t n, std::string_view what) const {
    if (remaining() < n) {
        throw ParseError("truncated input while reading " + std::string(what) + ": need " + std::to_string(n) +
                             " bytes, " + std::to_string(remaining()) + " left",
                         pos_);
    }
}

void ByteReader::expect_magic(std::string_view tag) {
    need(tag.size(), "magic");
    if (std::memcmp(bytes_.data() + pos_, tag.data(), tag.size()) != 0) {
        throw ParseError("bad magic, expected \"" + std::string(tag) + "\"", pos_);
    }
    pos_ += tag.size();
}

std::uint8_t ByteReader::u8() {
    need(1, "u8");
    return bytes_[pos_++];
}

std::uint32_t ByteReader::u32() {
    need(4, "u32");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
}

std::uint64_t ByteReader::u64() {
    need(8, "u64");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }

std::vector<double> ByteReader::f64s(std::size_t count) {
    if (count > remaining() / 8) {
        throw ParseError("truncated input: payload declares " + std::to_string(count) + " values, " +
                             std::to_string(remaining() / 8) + " present",
                         pos_);
    }
    std::vector<double> out(count);
    if constexpr (std::endian::native == std::endian::little) {
        std::memcpy(out.data(), bytes_.data() + pos_, count * 8);
        pos_ += count * 8;
    } else {
        for (double& x : out) x = f64();
    }
    return out;
}

void ByteReader::expect_end() const {
    if (remaining() != 0) throw ParseError(std::to_string(remaining()) + " trailing bytes", pos_);
}

}  // namespace ttk
