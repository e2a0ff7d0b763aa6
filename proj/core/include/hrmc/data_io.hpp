#pragma once

#include <string>

#include "hrmc/types.hpp"

namespace hrmc {

/// Reads a returns file: plain text, one decimal value per line, optional
/// single header line. Values are centered by subtracting the sample mean.
/// Throws std::runtime_error for an unreadable file, a non-numeric line
/// (named by line number), or fewer than 10 observations.
Vec ingest_returns(const std::string& path);

}  // namespace hrmc
