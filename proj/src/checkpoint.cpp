#include "tagcn/checkpoint.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tagcn/error.hpp"

namespace tagcn {
namespace {

using nlohmann::json;

std::string encode_double(double v) {
  char buf[17];
  const auto bits = std::bit_cast<std::uint64_t>(v);
  auto [end, ec] = std::to_chars(buf, buf + 16, bits, 16);
  std::string hex(buf, end);
  return std::string(16 - hex.size(), '0') + hex;
}

double decode_double(const std::string& hex) {
  require(hex.size() == 16, ErrorCode::FormatError, "parameter '" + hex + "' is not 16 hex digits");
  std::uint64_t bits = 0;
  auto [end, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), bits, 16);
  require(ec == std::errc() && end == hex.data() + hex.size(), ErrorCode::FormatError,
          "parameter '" + hex + "' is not hexadecimal");
  return std::bit_cast<double>(bits);
}

json encode_array(std::span<const double> values) {
  json arr = json::array();
  for (double v : values) arr.push_back(encode_double(v));
  return arr;
}

void decode_array(const json& arr, std::span<double> out) {
  require(arr.is_array() && arr.size() == out.size(), ErrorCode::FormatError, "parameter array has wrong length");
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = decode_double(arr[i].get<std::string>());
}

}  // namespace

std::string serialize_checkpoint(const Checkpoint& ckpt) {
  ckpt.model.check();
  json doc;
  doc["format"] = "tagcn-checkpoint";
  doc["version"] = kCheckpointVersion;
  doc["shift_kind"] = std::string(to_string(ckpt.shift_kind));
  doc["metadata"] = ckpt.metadata;
  json layers = json::array();
  for (const LayerSpec& l : ckpt.model.layers) {
    json jl;
    jl["kind"] = std::string(to_string(l.kind));
    jl["in_width"] = l.in_width;
    jl["out_width"] = l.out_width;
    jl["filter_size"] = l.filter_size;
    jl["include_k0"] = l.include_k0;
    json blocks = json::array();
    for (const Matrix& w : l.weights) blocks.push_back({{"rows", w.rows()}, {"cols", w.cols()}, {"data", encode_array(w.values())}});
    jl["weights"] = std::move(blocks);
    jl["bias"] = encode_array(l.bias);
    layers.push_back(std::move(jl));
  }
  doc["layers"] = std::move(layers);
  return doc.dump(1) + "\n";
}

Checkpoint parse_checkpoint(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::FormatError, std::string("checkpoint is not valid JSON: ") + e.what());
  }
  try {
    require(doc.value("format", "") == "tagcn-checkpoint", ErrorCode::FormatError, "not a tagcn checkpoint");
    require(doc.at("version").get<int>() == kCheckpointVersion, ErrorCode::FormatError,
            "unsupported checkpoint version");
    Checkpoint ckpt;
    ckpt.shift_kind = parse_shift_kind(doc.at("shift_kind").get<std::string>());
    ckpt.metadata = doc.value("metadata", std::map<std::string, std::string>{});
    for (const json& jl : doc.at("layers")) {
      LayerSpec l = make_layer(parse_layer_kind(jl.at("kind").get<std::string>()), jl.at("in_width").get<std::size_t>(),
                               jl.at("out_width").get<std::size_t>(), jl.at("filter_size").get<std::size_t>(),
                               jl.at("include_k0").get<bool>());
      const json& blocks = jl.at("weights");
      require(blocks.size() == l.weights.size(), ErrorCode::FormatError, "wrong number of weight blocks");
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        require(blocks[b].at("rows").get<std::size_t>() == l.weights[b].rows() &&
                    blocks[b].at("cols").get<std::size_t>() == l.weights[b].cols(),
                ErrorCode::FormatError, "weight block shape does not match the layer");
        decode_array(blocks[b].at("data"), l.weights[b].values());
      }
      decode_array(jl.at("bias"), l.bias);
      ckpt.model.layers.push_back(std::move(l));
    }
    ckpt.model.check();
    return ckpt;
  } catch (const json::exception& e) {
    fail(ErrorCode::FormatError, std::string("malformed checkpoint: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::FormatError) throw;
    fail(ErrorCode::FormatError, std::string("invalid checkpoint: ") + e.what());
  }
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::IoError, "cannot write " + path);
  out << serialize_checkpoint(ckpt);
  require(static_cast<bool>(out), ErrorCode::IoError, "failed writing " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_checkpoint(ss.str());
}

}  // namespace tagcn
