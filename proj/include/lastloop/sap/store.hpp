#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "lastloop/sap/word.hpp"

namespace lastloop::sap {

inline constexpr std::array<char, 4> kStoreMagic = {'S', 'A', 'P', 'S'};
inline constexpr std::array<char, 4> kXzCodecTag = {'X', 'Z', '0', '1'};
inline constexpr std::uint8_t kStoreVersion = 1;
inline constexpr std::size_t kStoreHeaderBytes = 16;
inline constexpr int kPrefixFieldBits = 6;

enum class Compression : std::uint8_t { None = 0, Xz = 1 };

struct StoreHeader {
  std::uint8_t version = kStoreVersion;
  std::uint8_t length = 0;
  Compression compression = Compression::None;
  std::uint64_t count = 0;

  friend bool operator==(const StoreHeader&, const StoreHeader&) = default;
};

/// Accumulates sorted words of one length and writes them as a store.
/// Words must arrive in strictly increasing lexicographic order.
class StoreWriter {
 public:
  StoreWriter(int length, bool compress);

  void add(std::span<const Step> word);
  void add(const Word& word) { add(word.steps()); }
  std::uint64_t count() const { return header_.count; }

  /// Serializes header, optional codec tag and payload.
  StoreHeader finish(std::ostream& out);

 private:
  void put_bits(std::uint32_t value, int bits);

  StoreHeader header_;
  std::vector<Step> previous_;
  std::vector<std::uint8_t> payload_;
  std::uint64_t bit_count_ = 0;
};

StoreHeader write_stream(std::span<const Word> words, int length, std::ostream& out, bool compress);

/// Sequential decoder. The payload is loaded (and decompressed) on
/// construction; records are decoded on demand.
class StoreReader {
 public:
  explicit StoreReader(std::istream& in);

  const StoreHeader& header() const { return header_; }
  /// Next word, or nullopt after `count` words. Throws FormatError on
  /// truncated or malformed records and on trailing data.
  std::optional<Word> next();

  std::size_t payload_bytes() const { return payload_.size(); }
  std::size_t stored_payload_bytes() const { return stored_bytes_; }

 private:
  std::uint32_t get_bits(int bits);
  std::uint64_t offset() const;

  StoreHeader header_;
  std::vector<std::uint8_t> payload_;
  std::size_t stored_bytes_ = 0;
  std::size_t data_start_ = kStoreHeaderBytes;
  std::uint64_t bit_pos_ = 0;
  std::uint64_t emitted_ = 0;
  std::vector<Step> current_;
};

struct StoreContents {
  StoreHeader header;
  std::vector<Word> words;
};

StoreContents read_stream(std::istream& in);

struct StoreStats {
  std::uint64_t count = 0;
  int length = 0;
  std::uint64_t basic_bits = 0;        // 2 bits per step, no prefix sharing
  std::uint64_t prefix_bytes = 0;      // prefix-delta payload before compression
  std::uint64_t stored_bytes = 0;      // payload bytes as stored
  double compression_ratio = 0.0;      // stored_bytes / basic bytes (0 when empty)
};

StoreStats store_stats(std::istream& in);

}  // namespace lastloop::sap
