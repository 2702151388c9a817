#pragma once

#include <span>
#include <string>
#include <vector>

#include "btcst/cst.hpp"

namespace btcst {

// Index file layout: magic "BTCST01", a fixed header (n, sigma, r, mll,
// sampling rates), a four-entry section table (offset + length, validated
// against the file size), then the alphabet map, topology, CSA and H
// sections. All integers little-endian.
std::vector<std::uint8_t> serialize_index(const BtCst& cst);
BtCst deserialize_index(std::span<const std::uint8_t> data);

void save_index(const BtCst& cst, const std::string& path);
BtCst load_index(const std::string& path);

}  // namespace btcst
