#pragma once

#include <filesystem>
#include <iosfwd>

#include "caft/scm.hpp"

namespace caft {

/// CSV with the fixed header `u0,u1,l,a,t0,ta,t_obs,d`; a missing
/// confounder is written as `NA`. Numbers round-trip exactly.
void write_csv(const Dataset& data, std::ostream& out);
Dataset read_csv(std::istream& in);

/// Compact little-endian binary cache: magic "CAFTDS01", u64 record count,
/// u8 confounder flag, then per record six f64 (u0,u1,l,t0,ta,t_obs) and
/// two u8 (a,d).
void write_binary(const Dataset& data, std::ostream& out);
Dataset read_binary(std::istream& in);

void save_csv(const Dataset& data, const std::filesystem::path& path);
Dataset load_csv(const std::filesystem::path& path);
void save_binary(const Dataset& data, const std::filesystem::path& path);
Dataset load_binary(const std::filesystem::path& path);

}  // namespace caft
