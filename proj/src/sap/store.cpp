#include "lastloop/sap/store.hpp"

#include <lzma.h>

#include <algorithm>
#include <cstring>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>

#include "lastloop/errors.hpp"

namespace lastloop::sap {

namespace {

constexpr int kMaxLength = 64;

std::vector<std::uint8_t> xz_run(lzma_stream& strm, std::span<const std::uint8_t> input, const char* what) {
  std::vector<std::uint8_t> out;
  std::array<std::uint8_t, 1 << 16> chunk{};
  strm.next_in = input.data();
  strm.avail_in = input.size();
  for (;;) {
    strm.next_out = chunk.data();
    strm.avail_out = chunk.size();
    const lzma_ret ret = lzma_code(&strm, LZMA_FINISH);
    out.insert(out.end(), chunk.data(), chunk.data() + (chunk.size() - strm.avail_out));
    if (ret == LZMA_STREAM_END) break;
    if (ret != LZMA_OK) {
      lzma_end(&strm);
      throw FormatError(std::string(what) + " failed (lzma code " + std::to_string(ret) + ")", strm.total_in);
    }
  }
  lzma_end(&strm);
  return out;
}

std::vector<std::uint8_t> xz_compress(std::span<const std::uint8_t> input) {
  lzma_stream strm = LZMA_STREAM_INIT;
  if (lzma_easy_encoder(&strm, 6, LZMA_CHECK_CRC64) != LZMA_OK) throw std::runtime_error("cannot start xz encoder");
  return xz_run(strm, input, "xz compression");
}

std::vector<std::uint8_t> xz_decompress(std::span<const std::uint8_t> input) {
  lzma_stream strm = LZMA_STREAM_INIT;
  if (lzma_stream_decoder(&strm, UINT64_MAX, 0) != LZMA_OK) throw std::runtime_error("cannot start xz decoder");
  return xz_run(strm, input, "xz decompression");
}

void check_store_length(int length) {
  if (length < 2 || length % 2 != 0 || length > kMaxLength)
    throw DomainError("store length must be even with 2 <= length <= 64 (got " + std::to_string(length) + ")");
}

}  // namespace

StoreWriter::StoreWriter(int length, bool compress) {
  check_store_length(length);
  header_.length = static_cast<std::uint8_t>(length);
  header_.compression = compress ? Compression::Xz : Compression::None;
}

void StoreWriter::put_bits(std::uint32_t value, int bits) {
  for (int b = bits - 1; b >= 0; --b) {
    if (bit_count_ % 8 == 0) payload_.push_back(0);
    if ((value >> b) & 1U) payload_.back() |= static_cast<std::uint8_t>(0x80U >> (bit_count_ % 8));
    ++bit_count_;
  }
}

void StoreWriter::add(std::span<const Step> word) {
  const std::size_t length = header_.length;
  const auto index = static_cast<std::size_t>(header_.count);
  if (word.size() != length)
    throw OrderError("word of length " + std::to_string(word.size()) + " in a store of length " +
                         std::to_string(length),
                     index);
  std::size_t prefix = 0;
  if (header_.count == 0) {
    previous_.assign(word.begin(), word.end());
  } else {
    auto [a, b] = std::mismatch(previous_.begin(), previous_.end(), word.begin());
    prefix = static_cast<std::size_t>(a - previous_.begin());
    if (prefix == length || *b < *a) throw OrderError("words must be strictly increasing", index);
    put_bits(static_cast<std::uint32_t>(prefix), kPrefixFieldBits);
    std::copy(word.begin() + static_cast<std::ptrdiff_t>(prefix), word.end(),
              previous_.begin() + static_cast<std::ptrdiff_t>(prefix));
  }
  for (std::size_t i = prefix; i < length; ++i) put_bits(code(word[i]), 2);
  ++header_.count;
}

StoreHeader StoreWriter::finish(std::ostream& out) {
  std::array<std::uint8_t, kStoreHeaderBytes> head{};
  std::memcpy(head.data(), kStoreMagic.data(), 4);
  head[4] = header_.version;
  head[5] = header_.length;
  head[6] = static_cast<std::uint8_t>(header_.compression);
  head[7] = 0;
  for (int i = 0; i < 8; ++i) head[8 + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(header_.count >> (8 * i));
  out.write(reinterpret_cast<const char*>(head.data()), head.size());
  if (header_.compression == Compression::Xz) {
    out.write(kXzCodecTag.data(), kXzCodecTag.size());
    const auto packed = xz_compress(payload_);
    out.write(reinterpret_cast<const char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
  } else {
    out.write(reinterpret_cast<const char*>(payload_.data()), static_cast<std::streamsize>(payload_.size()));
  }
  if (!out) throw std::runtime_error("failed writing SAP store");
  return header_;
}

StoreHeader write_stream(std::span<const Word> words, int length, std::ostream& out, bool compress) {
  StoreWriter writer(length, compress);
  for (const Word& w : words) writer.add(w);
  return writer.finish(out);
}

StoreReader::StoreReader(std::istream& in) {
  std::array<std::uint8_t, kStoreHeaderBytes> head{};
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  if (in.gcount() != static_cast<std::streamsize>(head.size()))
    throw FormatError("truncated header", static_cast<std::uint64_t>(in.gcount()));
  if (std::memcmp(head.data(), kStoreMagic.data(), 4) != 0) throw FormatError("bad magic, expected SAPS", 0);
  if (head[4] != kStoreVersion) throw FormatError("unsupported version " + std::to_string(head[4]), 4);
  const int length = head[5];
  if (length < 2 || length % 2 != 0 || length > kMaxLength)
    throw FormatError("invalid polygon length " + std::to_string(length), 5);
  if (head[6] > 1) throw FormatError("unknown compression flag " + std::to_string(head[6]), 6);
  if (head[7] != 0) throw FormatError("reserved byte must be zero", 7);
  header_.version = head[4];
  header_.length = head[5];
  header_.compression = static_cast<Compression>(head[6]);
  header_.count = 0;
  for (int i = 7; i >= 0; --i) header_.count = (header_.count << 8) | head[8 + static_cast<std::size_t>(i)];

  if (header_.compression == Compression::Xz) {
    std::array<char, 4> tag{};
    in.read(tag.data(), tag.size());
    if (in.gcount() != 4) throw FormatError("truncated codec tag", kStoreHeaderBytes);
    if (tag != kXzCodecTag) throw FormatError("unknown codec tag", kStoreHeaderBytes);
    data_start_ = kStoreHeaderBytes + tag.size();
  }
  std::vector<std::uint8_t> stored((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  stored_bytes_ = stored.size();
  payload_ = header_.compression == Compression::Xz ? xz_decompress(stored) : std::move(stored);
  current_.assign(header_.length, Step::D);
}

std::uint64_t StoreReader::offset() const { return data_start_ + bit_pos_ / 8; }

std::uint32_t StoreReader::get_bits(int bits) {
  if (bit_pos_ + static_cast<std::uint64_t>(bits) > payload_.size() * 8ULL)
    throw FormatError("truncated payload: record " + std::to_string(emitted_) + " of " +
                          std::to_string(header_.count) + " incomplete",
                      offset());
  std::uint32_t v = 0;
  for (int i = 0; i < bits; ++i, ++bit_pos_) {
    const std::uint8_t byte = payload_[static_cast<std::size_t>(bit_pos_ / 8)];
    v = (v << 1) | ((byte >> (7 - bit_pos_ % 8)) & 1U);
  }
  return v;
}

std::optional<Word> StoreReader::next() {
  if (emitted_ == header_.count) {
    const std::uint64_t end = payload_.size() * 8ULL;
    if (end - bit_pos_ >= 8) throw FormatError("trailing data after last record", offset());
    while (bit_pos_ < end)
      if (get_bits(1) != 0) throw FormatError("nonzero padding bits", offset());
    return std::nullopt;
  }
  std::size_t prefix = 0;
  if (emitted_ > 0) {
    const std::uint64_t at = offset();
    prefix = get_bits(kPrefixFieldBits);
    if (prefix >= header_.length)
      throw FormatError("shared prefix " + std::to_string(prefix) + " not below length " +
                            std::to_string(header_.length),
                        at);
  }
  for (std::size_t i = prefix; i < header_.length; ++i) current_[i] = step_from_code(static_cast<std::uint8_t>(get_bits(2)));
  ++emitted_;
  return Word(current_);
}

StoreContents read_stream(std::istream& in) {
  StoreReader reader(in);
  StoreContents out;
  out.header = reader.header();
  out.words.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(out.header.count, 1ULL << 24)));
  while (auto w = reader.next()) out.words.push_back(std::move(*w));
  return out;
}

StoreStats store_stats(std::istream& in) {
  StoreReader reader(in);
  while (reader.next()) {
  }
  StoreStats s;
  s.count = reader.header().count;
  s.length = reader.header().length;
  s.basic_bits = s.count * 2ULL * static_cast<std::uint64_t>(s.length);
  s.prefix_bytes = reader.payload_bytes();
  s.stored_bytes = reader.stored_payload_bytes();
  const double basic_bytes = static_cast<double>(s.basic_bits) / 8.0;
  s.compression_ratio = basic_bytes > 0 ? static_cast<double>(s.stored_bytes) / basic_bytes : 0.0;
  return s;
}

}  // namespace lastloop::sap
