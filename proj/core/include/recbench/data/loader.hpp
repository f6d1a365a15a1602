#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "recbench/data/id_maps.hpp"
#include "recbench/data/interaction_matrix.hpp"

namespace recbench {

/// tsv-triplet: `user item [rating [timestamp]]` per line.
/// adjacency-list: `user item1 item2 ...` per line.
/// Fields may be separated by tabs or spaces. Blank lines and lines starting
/// with '#' are skipped.
enum class InputFormat { TsvTriplet, AdjacencyList };

InputFormat parse_input_format(std::string_view name);
std::string_view to_string(InputFormat format);

struct LoadedInteractions {
  InteractionMatrix matrix;
  IdMaps ids;
};

/// Reads a plain or gzip-compressed file. Duplicate pairs collapse and all
/// weights are binarized to 1. Dense indices follow first appearance; passing
/// existing `ids` extends them, so a test file can be read in the index space
/// of its train file.
LoadedInteractions load_interactions(const std::filesystem::path& path, InputFormat format,
                                     IdMaps ids = {});

LoadedInteractions parse_interactions(std::string_view text, InputFormat format, IdMaps ids = {},
                                      const std::string& source = "<memory>");

/// Reads a whole file, transparently inflating gzip input.
std::string read_text_file(const std::filesystem::path& path);

/// Canonical tsv-triplet text: rows in user order, items ascending, one
/// `user<TAB>item` line each. With `ids`, external ids are written instead of
/// dense indices. `header` lines are emitted first, each prefixed with "# ".
std::string format_interactions(const InteractionMatrix& m, const IdMaps* ids = nullptr,
                                std::string_view header = {});

/// `index<TAB>external` per line.
std::string format_id_map(const IdBijection& ids);
IdBijection parse_id_map(std::string_view text, const std::string& source = "<memory>");

void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace recbench
