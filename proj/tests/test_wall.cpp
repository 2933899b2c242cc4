#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "wallplan/errors.hpp"
#include "wallplan/wall.hpp"

using namespace wallplan;

namespace {

const char* fixture_dir() {
  if (const char* env = std::getenv("WALLPLAN_FIXTURES")) return env;
  return WALLPLAN_FIXTURE_DIR;
}

std::string fixture(const std::string& name) {
  return std::string(fixture_dir()) + "/" + name;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("two-layer 2.4 m wall tiles as four fulls under a half-framed course") {
  WallBlueprint bp = generate_wall(2.4, 0.4, {});
  CHECK(bp.brick_count() == 9);
  REQUIRE(bp.layers.size() == 2);
  CHECK(layer_signature(bp, 0) == "FFFF");
  CHECK(layer_signature(bp, 1) == "HFFFH");
  CHECK(check_blueprint(bp).empty());
}

TEST_CASE("smallest wall is a single full brick") {
  WallBlueprint bp = generate_wall(0.6, 0.2, {});
  REQUIRE(bp.brick_count() == 1);
  CHECK(bp.layers.size() == 1);
  CHECK(bp.bricks[0].kind == BrickKind::Full);
  CHECK(bp.bricks[0].center[2] == 0.0);
}

TEST_CASE("18-brick wall carries 32 reward points and ids 1..18") {
  WallBlueprint bp = generate_wall(2.4, 0.8, {});
  REQUIRE(bp.brick_count() == 18);
  CHECK(wall_reward_total(bp) == 32);
  for (int i = 0; i < 18; ++i) CHECK(bp.bricks[static_cast<size_t>(i)].id == i + 1);

  // Ids run left to right within a layer, layers bottom to top.
  for (size_t layer = 0; layer < bp.layers.size(); ++layer)
    for (size_t k = 1; k < bp.layers[layer].size(); ++k) {
      const int prev = bp.layers[layer][k - 1];
      const int cur = bp.layers[layer][k];
      CHECK(cur == prev + 1);
      CHECK(bp.brick(cur).center[0] > bp.brick(prev).center[0]);
    }

  // A serialization round trip preserves the numbered model exactly.
  WallBlueprint back = wall_from_json_text(wall_to_json_text(bp));
  CHECK(wall_to_json_text(back) == wall_to_json_text(bp));
}

TEST_CASE("reward totals") {
  WallBlueprint empty;
  CHECK(wall_reward_total(empty) == 0);

  WallBlueprint two;
  Brick f;
  f.id = 1;
  f.kind = BrickKind::Full;
  f.reward = 2;
  Brick h;
  h.id = 2;
  h.kind = BrickKind::Half;
  h.reward = 1;
  two.bricks = {f, h};
  two.layers = {{1, 2}};
  CHECK(wall_reward_total(two) == 3);
}

TEST_CASE("save then load is the identity on the wall model") {
  WallBlueprint bp = generate_wall(1.2, 0.4, {});
  const auto path = temp_file("wallplan_roundtrip.json");
  save_wall(bp, path.string());
  WallBlueprint loaded = load_wall(path.string());
  REQUIRE(loaded.brick_count() == bp.brick_count());
  for (int i = 1; i <= bp.brick_count(); ++i) {
    CHECK(loaded.brick(i).kind == bp.brick(i).kind);
    CHECK(loaded.brick(i).center == bp.brick(i).center);
    CHECK(loaded.brick(i).reward == bp.brick(i).reward);
  }
  std::filesystem::remove(path);
}

TEST_CASE("missing required field is reported by name") {
  const char* text = R"({"dims": {"full_length":0.6,"half_length":0.3,"width":0.3,"height":0.2},
                         "bricks": [{"id":1,"kind":"full","yaw":0,"reward":2,"duration_s":40}]})";
  CHECK_THROWS_WITH_AS(wall_from_json_text(text), doctest::Contains("center"), ParseError);
}

TEST_CASE("shipped wall_150 fixture loads with 150 bricks") {
  WallBlueprint bp = load_wall(fixture("wall_150.json"));
  CHECK(bp.brick_count() == 150);
  CHECK(bp.layers.size() == 12);
  CHECK(check_blueprint(bp).empty());
}

TEST_CASE("length must be a multiple of the half brick") {
  CHECK_THROWS_AS(generate_wall(1.0, 0.4, {}), DimensionError);
  CHECK_THROWS_AS(generate_wall(2.4, 0.3, {}), DimensionError);
  CHECK_THROWS_AS(generate_wall(-1.2, 0.4, {}), DimensionError);
}

TEST_CASE("only the stretcher bond is implemented") {
  CHECK_THROWS_AS(generate_wall(1.2, 0.4, {}, "flemish"), UnsupportedBondError);
  CHECK_NOTHROW(generate_wall(1.2, 0.4, {}, "stretcher-running"));
}

TEST_CASE("generated walls satisfy the blueprint invariants") {
  // Sweep both parities of the half-unit count and several layer counts.
  for (int units = 2; units <= 11; ++units) {
    for (int layers = 1; layers <= 5; ++layers) {
      const double length = units * 0.3;
      const double height = layers * 0.2;
      WallBlueprint bp = generate_wall(length, height, {});
      INFO("wall ", length, " x ", height);
      CHECK(check_blueprint(bp).empty());

      for (size_t layer = 0; layer < bp.layers.size(); ++layer) {
        double sum = 0.0;
        for (int id : bp.layers[layer]) sum += bp.brick(id).length(bp.dims);
        CHECK(std::abs(sum - length) < 1e-9);

        // Half bricks may only frame a course (the four admissible forms).
        const std::string sig = layer_signature(bp, static_cast<int>(layer));
        for (size_t k = 0; k < sig.size(); ++k)
          if (sig[k] == 'H') CHECK((k == 0 || k + 1 == sig.size()));
      }
    }
  }
}

TEST_CASE("brick count grows linearly in length and layer count") {
  auto count = [](int units, int layers) {
    return generate_wall(units * 0.3, layers * 0.2, {}).brick_count();
  };
  const int step_len = count(6, 2) - count(4, 2);
  CHECK(count(8, 2) - count(6, 2) == step_len);
  CHECK(count(10, 2) - count(8, 2) == step_len);
  const int step_layers = count(8, 4) - count(8, 2);
  CHECK(count(8, 6) - count(8, 4) == step_layers);
}
