#include <cstdio>
#include <cstring>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "tagcn/checkpoint.hpp"
#include "tagcn/error.hpp"

using namespace tagcn;

TEST_SUITE("checkpoint") {
  TEST_CASE("round trip is bit-exact for every layer kind") {
    Rng rng(5);
    for (LayerKind kind : {LayerKind::TAGCN, LayerKind::GCN, LayerKind::Cheb, LayerKind::DCNN}) {
      Checkpoint ckpt{make_model({kind, 6, {5}, 3, 2, true}, rng), ShiftKind::RandomWalk, {{"note", "x"}}};
      ckpt.model.layers[0].weights[0](0, 0) = -0.0;
      ckpt.model.layers[0].weights[0](0, 1) = 5e-324;
      ckpt.model.layers[0].weights[0](1, 0) = 0.1 + 0.2;
      const std::string text = serialize_checkpoint(ckpt);
      const Checkpoint back = parse_checkpoint(text);
      CHECK(back.shift_kind == ShiftKind::RandomWalk);
      CHECK(back.metadata == ckpt.metadata);
      REQUIRE(back.model.layers.size() == ckpt.model.layers.size());
      for (std::size_t l = 0; l < back.model.layers.size(); ++l) {
        const auto& a = ckpt.model.layers[l];
        const auto& b = back.model.layers[l];
        CHECK(a.kind == b.kind);
        CHECK(a.filter_size == b.filter_size);
        CHECK(a.include_k0 == b.include_k0);
        REQUIRE(a.weights.size() == b.weights.size());
        for (std::size_t w = 0; w < a.weights.size(); ++w) {
          const auto av = a.weights[w].values();
          const auto bv = b.weights[w].values();
          CHECK(std::memcmp(av.data(), bv.data(), av.size_bytes()) == 0);
        }
        CHECK(std::memcmp(a.bias.data(), b.bias.data(), a.bias.size() * sizeof(double)) == 0);
      }
      CHECK(serialize_checkpoint(back) == text);
    }
  }

  TEST_CASE("files") {
    Rng rng(1);
    const Checkpoint ckpt{make_model({LayerKind::TAGCN, 3, {2}, 2, 2, false}, rng), ShiftKind::SymNormalized, {}};
    const auto path = std::filesystem::temp_directory_path() / "tagcn_ckpt_test.json";
    save_checkpoint(ckpt, path.string());
    const Checkpoint back = load_checkpoint(path.string());
    CHECK(back.model.layers[1].weights == ckpt.model.layers[1].weights);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_checkpoint("/nonexistent/ckpt.json"), Error);
  }

  TEST_CASE("malformed input") {
    for (const char* bad : {"", "{}", "[1,2]", R"({"format":"tagcn-checkpoint","version":99})",
                            R"({"format":"other","version":1})"}) {
      try {
        parse_checkpoint(bad);
        FAIL("expected FormatError for " << bad);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FormatError);
      }
    }
    Rng rng(2);
    const Checkpoint ckpt{make_model({LayerKind::GCN, 3, {2}, 2, 1, true}, rng), ShiftKind::SymNormalized, {}};
    std::string text = serialize_checkpoint(ckpt);
    const auto pos = text.find("\"rows\": 3");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 9, "\"rows\": 4");
    CHECK_THROWS_AS(parse_checkpoint(text), Error);
  }
}
