#include "recbench/data/loader.hpp"

#include <zlib.h>

#include <array>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <vector>

#include "recbench/common/error.hpp"

namespace recbench {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

void split_fields(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
}

bool is_number(std::string_view field) {
  std::string tmp(field);
  char* end = nullptr;
  std::strtod(tmp.c_str(), &end);
  return end != tmp.c_str() && *end == '\0';
}

}  // namespace

InputFormat parse_input_format(std::string_view name) {
  if (name == "tsv-triplet" || name == "tsv") return InputFormat::TsvTriplet;
  if (name == "adjacency-list" || name == "adjacency") return InputFormat::AdjacencyList;
  throw Error("unknown input format '" + std::string(name) +
              "' (expected tsv-triplet or adjacency-list)");
}

std::string_view to_string(InputFormat format) {
  return format == InputFormat::TsvTriplet ? "tsv-triplet" : "adjacency-list";
}

std::string read_text_file(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error("input file not found: " + path.string());
  // gzread passes uncompressed files through unchanged.
  std::unique_ptr<gzFile_s, int (*)(gzFile)> file(gzopen(path.c_str(), "rb"), gzclose);
  if (!file) throw Error("cannot open " + path.string());
  std::string text;
  std::array<char, 1 << 16> buf{};
  for (;;) {
    const int n = gzread(file.get(), buf.data(), static_cast<unsigned>(buf.size()));
    if (n < 0) throw Error("read error in " + path.string());
    if (n == 0) break;
    text.append(buf.data(), static_cast<std::size_t>(n));
  }
  return text;
}

LoadedInteractions parse_interactions(std::string_view text, InputFormat format, IdMaps ids,
                                      const std::string& source) {
  std::vector<Interaction> triplets;
  std::vector<std::string_view> fields;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    split_fields(line, fields);
    if (fields.empty() || fields.front().front() == '#') continue;

    if (format == InputFormat::TsvTriplet) {
      if (fields.size() < 2 || fields.size() > 4) {
        throw ParseError(source, line_no,
                         "expected 2 to 4 fields (user item [rating [timestamp]]), got " +
                             std::to_string(fields.size()));
      }
      for (std::size_t f = 2; f < fields.size(); ++f) {
        if (!is_number(fields[f])) {
          throw ParseError(source, line_no, "non-numeric field '" + std::string(fields[f]) + "'");
        }
      }
      const Index u = ids.users.intern(fields[0]);
      const Index i = ids.items.intern(fields[1]);
      triplets.push_back({u, i, 1.0});
    } else {
      const Index u = ids.users.intern(fields[0]);
      for (std::size_t f = 1; f < fields.size(); ++f) {
        triplets.push_back({u, ids.items.intern(fields[f]), 1.0});
      }
    }
  }
  if (triplets.empty()) throw EmptyDatasetError(source + ": no interactions");
  auto matrix = InteractionMatrix::from_triplets(ids.users.size(), ids.items.size(),
                                                 std::move(triplets), /*binarize=*/true);
  return {std::move(matrix), std::move(ids)};
}

LoadedInteractions load_interactions(const std::filesystem::path& path, InputFormat format,
                                     IdMaps ids) {
  return parse_interactions(read_text_file(path), format, std::move(ids), path.string());
}

std::string format_interactions(const InteractionMatrix& m, const IdMaps* ids,
                                std::string_view header) {
  std::string out;
  out.reserve(m.nnz() * 12 + header.size() + 16);
  std::size_t pos = 0;
  while (pos < header.size()) {
    std::size_t eol = header.find('\n', pos);
    if (eol == std::string_view::npos) eol = header.size();
    out += "# ";
    out.append(header.substr(pos, eol - pos));
    out += '\n';
    pos = eol + 1;
  }
  for (std::size_t u = 0; u < m.n_users(); ++u) {
    for (const Index i : m.row(u)) {
      if (ids) {
        out += ids->users.external(static_cast<Index>(u));
        out += '\t';
        out += ids->items.external(i);
      } else {
        out += std::to_string(u);
        out += '\t';
        out += std::to_string(i);
      }
      out += '\n';
    }
  }
  return out;
}

std::string format_id_map(const IdBijection& ids) {
  std::string out;
  for (Index i = 0; i < ids.size(); ++i) {
    out += std::to_string(i);
    out += '\t';
    out += ids.external(i);
    out += '\n';
  }
  return out;
}

IdBijection parse_id_map(std::string_view text, const std::string& source) {
  IdBijection ids;
  std::vector<std::string_view> fields;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    split_fields(line, fields);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() != 2) throw ParseError(source, line_no, "expected `index external`");
    std::size_t index = 0;
    const auto [ptr, ec] =
        std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), index);
    if (ec != std::errc{} || ptr != fields[0].data() + fields[0].size() || index != ids.size()) {
      throw ParseError(source, line_no, "indices must be contiguous from 0");
    }
    ids.intern(fields[1]);
  }
  return ids;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace recbench
