#pragma once

#include <filesystem>
#include <iosfwd>

#include "recbench/models/model.hpp"

namespace recbench {

/// Binary container for a FittedModel, all integers little-endian, doubles
/// as IEEE-754 bit patterns:
///
///   bytes 0..3   magic "RBFM"
///   u32          format version (kModelFormatVersion)
///   u8           model kind (ModelKind ordinal)
///   u8           param presence bits: topk, shrink, weighting, alpha, beta, l2
///   u64 f64 u8 f64 f64 f64   topk, shrink, weighting, alpha, beta, l2
///   u64 u64      n_users, n_items
///   csr          training matrix (weights stored)
///   u8           state tag (ModelState alternative index)
///   payload      popularity: u64 n, f64[n]
///                similarity: csr
///                dense:      u64 n, f64[n]
///
/// csr := u64 rows, u64 cols, u64 nnz, u64 indptr[rows+1], u32 indices[nnz],
///        f64 values[nnz]
///
/// Readers reject other magic values and any version with a different major
/// number.
inline constexpr std::uint32_t kModelFormatVersion = 1;

void save_model(const FittedModel& model, std::ostream& out);
FittedModel load_model(std::istream& in);

void save_model(const FittedModel& model, const std::filesystem::path& path);
FittedModel load_model(const std::filesystem::path& path);

}  // namespace recbench
