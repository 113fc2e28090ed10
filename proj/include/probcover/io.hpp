#pragma once

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "probcover/common.hpp"
#include "probcover/embedding_set.hpp"

namespace probcover {

enum class FileFormat { binary, csv };

// Binary embedding format "CVS1", little-endian:
//   magic "CVS1" | u32 n | u32 d | u8 has_labels |
//   n*d float32 row-major coordinates | n u32 labels iff has_labels = 1.

namespace detail {

inline std::uint32_t read_u32_le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 |
         static_cast<std::uint32_t>(p[3]) << 24;
}

inline void append_u32_le(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

inline std::vector<unsigned char> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path.string());
  std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>()};
  if (in.bad()) throw io_error("read failure on " + path.string());
  return bytes;
}

/// Writes content to a temporary sibling then renames over path, so reruns
/// replace the output in one step.
inline void atomic_write(const std::filesystem::path& path,
                         const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw io_error("write failure on " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw io_error("cannot rename " + tmp.string() + " to " + path.string());
}

/// True when the token is a bare non-negative integer literal.
inline bool is_label_token(const std::string& tok) {
  std::size_t i = 0;
  if (i < tok.size() && tok[i] == '+') ++i;
  if (i == tok.size()) return false;
  for (; i < tok.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
  }
  return true;
}

inline double parse_double_token(const std::string& tok, std::size_t line_no,
                                 const std::string& path) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw io_error(path + ": line " + std::to_string(line_no) +
                   ": cannot parse field '" + tok + "'");
  return v;
}

}  // namespace detail

inline EmbeddingSet load_embeddings_binary(const std::filesystem::path& path) {
  const auto bytes = detail::read_file_bytes(path);
  const std::string name = path.string();
  if (bytes.size() < 13)
    throw io_error(name + ": truncated header (need 13 bytes, file has " +
                   std::to_string(bytes.size()) + ")");
  if (!(bytes[0] == 'C' && bytes[1] == 'V' && bytes[2] == 'S' && bytes[3] == '1'))
    throw io_error(name + ": bad magic at byte 0, expected \"CVS1\"");
  const std::uint32_t n = detail::read_u32_le(bytes.data() + 4);
  const std::uint32_t d = detail::read_u32_le(bytes.data() + 8);
  const unsigned char has_labels = bytes[12];
  if (n == 0 || d == 0)
    throw io_error(name + ": header declares empty set (n=" + std::to_string(n) +
                   ", d=" + std::to_string(d) + ")");
  if (has_labels > 1)
    throw io_error(name + ": has_labels byte at offset 12 must be 0 or 1, got " +
                   std::to_string(has_labels));
  const std::size_t coord_bytes = std::size_t(n) * d * 4;
  const std::size_t expected = 13 + coord_bytes + (has_labels ? std::size_t(n) * 4 : 0);
  if (bytes.size() != expected)
    throw io_error(name + ": payload size mismatch, header implies " +
                   std::to_string(expected) + " bytes but file has " +
                   std::to_string(bytes.size()));

  EmbeddingSet es;
  es.n = n;
  es.d = d;
  es.points.reserve(std::size_t(n) * d);
  for (std::size_t i = 0; i < std::size_t(n) * d; ++i) {
    const std::size_t off = 13 + i * 4;
    const float f = std::bit_cast<float>(detail::read_u32_le(bytes.data() + off));
    if (!std::isfinite(f))
      throw io_error(name + ": non-finite coordinate at byte " + std::to_string(off));
    es.points.push_back(static_cast<double>(f));
  }
  if (has_labels) {
    es.labels.emplace();
    es.labels->reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t off = 13 + coord_bytes + i * 4;
      es.labels->push_back(detail::read_u32_le(bytes.data() + off));
    }
  }
  validate(es);
  return es;
}

/// CSV: one row per point, d float columns, optionally one trailing label
/// column. The label column is inferred: with at least two columns, a final
/// field that is a bare non-negative integer on every row is read as labels.
inline EmbeddingSet load_embeddings_csv(const std::filesystem::path& path,
                                        bool skip_header = false) {
  std::ifstream in(path);
  const std::string name = path.string();
  if (!in) throw io_error("cannot open " + name);

  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;
  std::string line;
  std::size_t line_no = 0;
  bool all_last_integer = true;
  std::size_t cols = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_header && line_no == 1) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      std::string tok = line.substr(start, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - start);
      const auto first = tok.find_first_not_of(" \t");
      const auto last = tok.find_last_not_of(" \t");
      fields.push_back(first == std::string::npos
                           ? std::string()
                           : tok.substr(first, last - first + 1));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cols == 0) {
      cols = fields.size();
    } else if (fields.size() != cols) {
      throw io_error(name + ": line " + std::to_string(line_no) + " has " +
                     std::to_string(fields.size()) + " columns, expected " +
                     std::to_string(cols));
    }
    all_last_integer = all_last_integer && detail::is_label_token(fields.back());
    rows.emplace_back(std::move(fields));
    row_lines.push_back(line_no);
  }
  if (in.bad()) throw io_error("read failure on " + name);
  if (rows.empty()) throw io_error(name + ": no data rows");

  const bool labeled = cols >= 2 && all_last_integer;
  const std::size_t d = labeled ? cols - 1 : cols;
  EmbeddingSet es;
  es.n = rows.size();
  es.d = d;
  es.points.reserve(es.n * d);
  if (labeled) es.labels.emplace();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t row_line = row_lines[r];
    for (std::size_t c = 0; c < d; ++c) {
      const double v = detail::parse_double_token(rows[r][c], row_line, name);
      if (!std::isfinite(v))
        throw io_error(name + ": line " + std::to_string(row_line) +
                       ": non-finite value '" + rows[r][c] + "'");
      es.points.push_back(v);
    }
    if (labeled) {
      const unsigned long lv = std::stoul(rows[r][cols - 1]);
      if (lv > 0xffffffffUL)
        throw io_error(name + ": line " + std::to_string(row_line) +
                       ": label out of range");
      es.labels->push_back(static_cast<std::uint32_t>(lv));
    }
  }
  validate(es);
  return es;
}

inline EmbeddingSet load_embeddings(const std::filesystem::path& path,
                                    FileFormat format,
                                    bool csv_skip_header = false) {
  return format == FileFormat::binary ? load_embeddings_binary(path)
                                      : load_embeddings_csv(path, csv_skip_header);
}

inline std::string encode_embeddings_binary(const EmbeddingSet& es) {
  if (es.n > 0xffffffffUL || es.d > 0xffffffffUL)
    throw capacity_error("embedding set too large for the binary format");
  std::string out;
  out.reserve(13 + es.n * es.d * 4 + (es.labels ? es.n * 4 : 0));
  out += "CVS1";
  detail::append_u32_le(out, static_cast<std::uint32_t>(es.n));
  detail::append_u32_le(out, static_cast<std::uint32_t>(es.d));
  out.push_back(es.labels ? '\x01' : '\x00');
  for (double v : es.points) {
    const float f = static_cast<float>(v);
    if (!std::isfinite(f))
      throw validation_error("coordinate not representable as float32");
    detail::append_u32_le(out, std::bit_cast<std::uint32_t>(f));
  }
  if (es.labels) {
    for (std::uint32_t l : *es.labels) detail::append_u32_le(out, l);
  }
  return out;
}

inline void save_embeddings_binary(const EmbeddingSet& es,
                                   const std::filesystem::path& path) {
  detail::atomic_write(path, encode_embeddings_binary(es));
}

}  // namespace probcover
