#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace ppclust {

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);

/// Stable text rendering of a double: shortest form that round-trips.
std::string format_double(double v);

/// FNV-1a over a string; used for content-addressed run directories.
std::uint64_t fnv1a(const std::string& s);

/// Runs fn(i) for i in [0, n) on `workers` threads. Results must be written
/// to pre-sized slots indexed by i so output order is schedule-independent.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

} // namespace ppclust
