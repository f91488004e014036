#pragma once

// Text formats for networks, codes and message sets.
//
// Network:
//
//   p: 2
//   q: 2
//   nodes: a b c
//   edges:
//     {from: a, to: b, gain: [[1,0],[0,1]]}
//     {from: b, to: c, gain: shift g=1}
//   sessions:
//     {id: 1, source: a, dest: c, width: 1}
//
// Code (for a given layered network):
//
//   T: 2
//   C 1: [[1],[0]]
//   D 1: [[1,0]]
//   F b: [[1,0],[0,1]]
//
// Messages:
//
//   W 1: [1,0]
//
// Whitespace, including line breaks, only separates tokens; '#' starts a
// comment that runs to the end of the line. Node names are any run of
// characters other than whitespace and  { } , : = #. A matrix with no rows is
// written [] and takes its column count from context.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldnet/coding.hpp"
#include "ldnet/network.hpp"

namespace ldnet {

/// Parses the syntax only; structural problems (unknown endpoints, gain
/// shapes) are left for validate().
Network parse_network(std::string_view text);
std::string format_network(const Network& n);

LinearCode parse_code(std::string_view text, const LayeredNetwork& ln);
std::string format_code(const LayeredNetwork& ln, const LinearCode& code);

std::vector<GfMatrix> parse_messages(std::string_view text,
                                     const LayeredNetwork& ln);
std::string format_messages(const Network& n,
                            std::span<const GfMatrix> messages);

/// Flattens a column vector to "[a,b,c]".
std::string format_vector(const GfMatrix& column);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace ldnet
