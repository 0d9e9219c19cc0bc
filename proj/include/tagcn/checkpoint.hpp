#pragma once

#include <map>
#include <string>
#include <string_view>

#include "tagcn/graph.hpp"
#include "tagcn/nn.hpp"

namespace tagcn {

/// A trained model plus what is needed to rebuild its operators.
struct Checkpoint {
  Model model;
  ShiftKind shift_kind = ShiftKind::SymNormalized;
  std::map<std::string, std::string> metadata;
};

inline constexpr int kCheckpointVersion = 1;

/// JSON container; every parameter is stored as the 16-hex-digit image of its
/// IEEE-754 bit pattern so a round trip is bit-exact.
std::string serialize_checkpoint(const Checkpoint& ckpt);
/// Throws FormatError on malformed input or an unknown version.
Checkpoint parse_checkpoint(std::string_view text);

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace tagcn
