#pragma once

#include <array>
#include <string>
#include <vector>

namespace wallplan {

enum class BrickKind { Full, Half };

const char* to_string(BrickKind kind);
BrickKind brick_kind_from_string(const std::string& s);

struct BrickDimensions {
  double full_length = 0.60;  // meters
  double half_length = 0.30;  // must be full_length / 2
  double width = 0.30;
  double height = 0.20;
};

/// A placeable wall element. `center[2]` holds the bottom face height, so
/// a first-layer brick has z = 0 and every z is an integer multiple of the
/// brick height.
struct Brick {
  int id = 0;  // 1-based node index, left-to-right then bottom-to-top
  BrickKind kind = BrickKind::Full;
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double yaw = 0.0;        // radians about z
  int reward = 0;          // 2 for full, 1 for half under default scoring
  double duration_s = 40.0;
  bool placed = false;     // pre-placed flag for semi-built wall inputs

  double length(const BrickDimensions& dims) const {
    return kind == BrickKind::Full ? dims.full_length : dims.half_length;
  }
};

struct WallBlueprint {
  BrickDimensions dims;
  double length = 0.0;
  double height = 0.0;
  std::vector<Brick> bricks;              // ordered by id
  std::vector<std::vector<int>> layers;   // brick ids per layer, bottom-up

  const Brick& brick(int id) const { return bricks.at(static_cast<size_t>(id) - 1); }
  int brick_count() const { return static_cast<int>(bricks.size()); }
  int layer_of(int id) const;
};

/// Generates a stretcher-running-bond blueprint. `length` must be a
/// positive multiple of the half brick length and `height` a positive
/// multiple of the brick height; `bond` must name the stretcher bond.
/// Even layers start with a full brick, odd layers with a half, so
/// vertical joints of adjacent layers never align.
WallBlueprint generate_wall(double length, double height, const BrickDimensions& dims,
                            const std::string& bond = "stretcher");

int wall_reward_total(const WallBlueprint& bp);

/// Full invariant check; returns human-readable violations (empty = valid).
std::vector<std::string> check_blueprint(const WallBlueprint& bp);

/// Layer content as a string over {F, H}, left to right. Test helper and
/// debugging aid.
std::string layer_signature(const WallBlueprint& bp, int layer);

WallBlueprint load_wall(const std::string& path);
void save_wall(const WallBlueprint& bp, const std::string& path);
WallBlueprint wall_from_json_text(const std::string& text);
std::string wall_to_json_text(const WallBlueprint& bp);

}  // namespace wallplan
