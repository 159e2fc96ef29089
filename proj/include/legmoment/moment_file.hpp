#pragma once

#include "legmoment/moment_table.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace legmoment {

// Text format, one header line then one record per moment:
//
//   # legendre-moments v1 <Nx> <Ny> <M> <method>
//   <p> <q> <value with 17 significant digits>
//
// Every (p, q) with p + q <= M appears exactly once, in any order.

struct MomentFile {
    MomentTable table;
    std::string method;
};

std::string write_moments(const MomentTable& t, std::string_view method);
MomentFile read_moments(std::string_view text);

void save_moments(const MomentTable& t, std::string_view method, const std::filesystem::path& path);
MomentFile load_moments(const std::filesystem::path& path);

} // namespace legmoment
