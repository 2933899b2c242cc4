#include "wallplan/wall.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wallplan/errors.hpp"

namespace wallplan {

using nlohmann::json;

namespace {

constexpr double kEps = 1e-9;

bool is_positive_multiple(double value, double unit, long long* count = nullptr) {
  if (value <= 0 || unit <= 0) return false;
  const double q = value / unit;
  const long long n = std::llround(q);
  if (n <= 0 || std::abs(q - static_cast<double>(n)) > 1e-6) return false;
  if (count) *count = n;
  return true;
}

void validate_dims(const BrickDimensions& d) {
  if (d.full_length <= 0 || d.half_length <= 0 || d.width <= 0 || d.height <= 0)
    throw DimensionError("brick dimensions must be strictly positive");
  if (std::abs(d.half_length * 2 - d.full_length) > kEps)
    throw DimensionError("half brick length must be exactly half of the full length");
}

bool is_stretcher(const std::string& bond) {
  return bond == "stretcher" || bond == "stretcher-running" || bond == "stretcher_running";
}

}  // namespace

const char* to_string(BrickKind kind) {
  return kind == BrickKind::Full ? "full" : "half";
}

BrickKind brick_kind_from_string(const std::string& s) {
  if (s == "full") return BrickKind::Full;
  if (s == "half") return BrickKind::Half;
  throw ParseError("unknown brick kind \"" + s + "\" (expected \"full\" or \"half\")");
}

int WallBlueprint::layer_of(int id) const {
  return static_cast<int>(std::llround(brick(id).center[2] / dims.height));
}

WallBlueprint generate_wall(double length, double height, const BrickDimensions& dims,
                            const std::string& bond) {
  validate_dims(dims);
  if (!is_stretcher(bond))
    throw UnsupportedBondError("unsupported bond \"" + bond + "\"; only the stretcher running bond is implemented");

  long long half_units = 0, layer_count = 0;
  if (!is_positive_multiple(length, dims.half_length, &half_units))
    throw DimensionError("wall length must be a positive multiple of the half brick length");
  if (!is_positive_multiple(height, dims.height, &layer_count))
    throw DimensionError("wall height must be a positive multiple of the brick height");

  WallBlueprint bp;
  bp.dims = dims;
  bp.length = length;
  bp.height = height;

  // Layer content over {F, H}. Even layers start with a full brick, odd
  // layers with a half, which offsets vertical joints by one half unit.
  auto layer_kinds = [&](long long layer) {
    std::vector<BrickKind> kinds;
    const bool odd_layer = layer % 2 != 0;
    long long remaining = half_units;
    if (odd_layer) {
      kinds.push_back(BrickKind::Half);
      remaining -= 1;
    }
    while (remaining >= 2) {
      kinds.push_back(BrickKind::Full);
      remaining -= 2;
    }
    if (remaining == 1) kinds.push_back(BrickKind::Half);
    return kinds;
  };

  int next_id = 1;
  for (long long layer = 0; layer < layer_count; ++layer) {
    bp.layers.emplace_back();
    double x = 0.0;
    for (BrickKind kind : layer_kinds(layer)) {
      Brick b;
      b.id = next_id++;
      b.kind = kind;
      const double len = b.length(dims);
      b.center = {x + len / 2.0, 0.0, static_cast<double>(layer) * dims.height};
      b.reward = (kind == BrickKind::Full) ? 2 : 1;
      bp.bricks.push_back(b);
      bp.layers.back().push_back(b.id);
      x += len;
    }
  }
  return bp;
}

int wall_reward_total(const WallBlueprint& bp) {
  int total = 0;
  for (const Brick& b : bp.bricks) total += b.reward;
  return total;
}

std::string layer_signature(const WallBlueprint& bp, int layer) {
  std::string s;
  for (int id : bp.layers.at(static_cast<size_t>(layer)))
    s += (bp.brick(id).kind == BrickKind::Full) ? 'F' : 'H';
  return s;
}

std::vector<std::string> check_blueprint(const WallBlueprint& bp) {
  std::vector<std::string> problems;
  auto fail = [&](std::string msg) { problems.push_back(std::move(msg)); };

  if (std::abs(bp.dims.half_length * 2 - bp.dims.full_length) > kEps)
    fail("dims: half length is not half of full length");

  for (size_t i = 0; i < bp.bricks.size(); ++i) {
    const Brick& b = bp.bricks[i];
    if (b.id != static_cast<int>(i) + 1) fail("brick ids are not 1..N in order");
    const double q = b.center[2] / bp.dims.height;
    if (b.center[2] < -kEps || std::abs(q - std::llround(q)) > 1e-6)
      fail("brick " + std::to_string(b.id) + ": z is not a non-negative multiple of brick height");
    const int expect_reward = b.kind == BrickKind::Full ? 2 : 1;
    if (b.reward != expect_reward)
      fail("brick " + std::to_string(b.id) + ": reward does not match its kind");
  }

  for (size_t layer = 0; layer < bp.layers.size(); ++layer) {
    std::vector<int> ids = bp.layers[layer];
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      return bp.brick(a).center[0] < bp.brick(b).center[0];
    });
    double x = 0.0, total = 0.0;
    for (size_t pos = 0; pos < ids.size(); ++pos) {
      const Brick& b = bp.brick(ids[pos]);
      const double len = b.length(bp.dims);
      if (std::abs((b.center[0] - len / 2.0) - x) > 1e-6)
        fail("layer " + std::to_string(layer) + ": gap or overlap before brick " + std::to_string(b.id));
      if (bp.layer_of(b.id) != static_cast<int>(layer))
        fail("brick " + std::to_string(b.id) + ": z does not match its layer index");
      if (b.kind == BrickKind::Half && pos != 0 && pos + 1 != ids.size())
        fail("layer " + std::to_string(layer) + ": half brick " + std::to_string(b.id) + " away from the layer ends");
      x += len;
      total += len;
    }
    if (std::abs(total - bp.length) > 1e-6)
      fail("layer " + std::to_string(layer) + ": bricks do not tile the wall length");

    if (layer > 0) {
      // Stretcher bond: interior vertical joints of adjacent layers differ.
      auto joints = [&](const std::vector<int>& layer_ids) {
        std::vector<long long> out;
        double acc = 0.0;
        for (size_t pos = 0; pos + 1 < layer_ids.size(); ++pos) {
          acc += bp.brick(layer_ids[pos]).length(bp.dims);
          out.push_back(std::llround(acc / bp.dims.half_length));
        }
        return out;
      };
      std::vector<int> below = bp.layers[layer - 1];
      std::sort(below.begin(), below.end(), [&](int a, int b) {
        return bp.brick(a).center[0] < bp.brick(b).center[0];
      });
      const auto ja = joints(ids), jb = joints(below);
      for (long long j : ja)
        if (std::find(jb.begin(), jb.end(), j) != jb.end()) {
          fail("layers " + std::to_string(layer - 1) + "/" + std::to_string(layer) +
               ": vertical joints align (bond violated)");
          break;
        }
    }
  }
  return problems;
}

namespace {

json dims_to_json(const BrickDimensions& d) {
  return json{{"full_length", d.full_length},
              {"half_length", d.half_length},
              {"width", d.width},
              {"height", d.height}};
}

template <typename T>
T require_field(const json& obj, const char* field, const std::string& context) {
  if (!obj.contains(field))
    throw ParseError(context + ": missing required field \"" + field + "\"");
  try {
    return obj.at(field).get<T>();
  } catch (const json::exception&) {
    throw ParseError(context + ": field \"" + field + "\" has the wrong type");
  }
}

}  // namespace

std::string wall_to_json_text(const WallBlueprint& bp) {
  json out;
  out["dims"] = dims_to_json(bp.dims);
  out["bricks"] = json::array();
  for (const Brick& b : bp.bricks) {
    json jb{{"id", b.id},
            {"kind", to_string(b.kind)},
            {"center", {b.center[0], b.center[1], b.center[2]}},
            {"yaw", b.yaw},
            {"reward", b.reward},
            {"duration_s", b.duration_s}};
    if (b.placed) jb["placed"] = true;
    out["bricks"].push_back(std::move(jb));
  }
  return out.dump(2) + "\n";
}

WallBlueprint wall_from_json_text(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  WallBlueprint bp;
  if (!in.contains("dims")) throw ParseError("wall: missing required field \"dims\"");
  const json& jd = in["dims"];
  bp.dims.full_length = require_field<double>(jd, "full_length", "dims");
  bp.dims.half_length = require_field<double>(jd, "half_length", "dims");
  bp.dims.width = require_field<double>(jd, "width", "dims");
  bp.dims.height = require_field<double>(jd, "height", "dims");
  validate_dims(bp.dims);

  if (!in.contains("bricks")) throw ParseError("wall: missing required field \"bricks\"");
  for (const json& jb : in["bricks"]) {
    Brick b;
    const std::string ctx = "brick " + std::to_string(bp.bricks.size() + 1);
    b.id = require_field<int>(jb, "id", ctx);
    b.kind = brick_kind_from_string(require_field<std::string>(jb, "kind", ctx));
    auto center = require_field<std::vector<double>>(jb, "center", ctx);
    if (center.size() != 3) throw ParseError(ctx + ": field \"center\" must have 3 components");
    b.center = {center[0], center[1], center[2]};
    b.yaw = require_field<double>(jb, "yaw", ctx);
    b.reward = require_field<int>(jb, "reward", ctx);
    b.duration_s = require_field<double>(jb, "duration_s", ctx);
    b.placed = jb.value("placed", false);
    bp.bricks.push_back(b);
  }
  std::sort(bp.bricks.begin(), bp.bricks.end(), [](const Brick& a, const Brick& b) { return a.id < b.id; });
  for (size_t i = 0; i < bp.bricks.size(); ++i)
    if (bp.bricks[i].id != static_cast<int>(i) + 1)
      throw ParseError("brick ids must be exactly 1..N (got id " + std::to_string(bp.bricks[i].id) + ")");

  // Derive extent and layer partition from the brick data.
  double max_x = 0.0, min_x = 0.0;
  int max_layer = -1;
  for (const Brick& b : bp.bricks) {
    max_x = std::max(max_x, b.center[0] + b.length(bp.dims) / 2.0);
    min_x = std::min(min_x, b.center[0] - b.length(bp.dims) / 2.0);
    max_layer = std::max(max_layer, static_cast<int>(std::llround(b.center[2] / bp.dims.height)));
  }
  bp.length = bp.bricks.empty() ? 0.0 : max_x - min_x;
  bp.height = (max_layer + 1) * bp.dims.height;
  bp.layers.assign(static_cast<size_t>(max_layer + 1), {});
  for (const Brick& b : bp.bricks) bp.layers[static_cast<size_t>(bp.layer_of(b.id))].push_back(b.id);
  return bp;
}

WallBlueprint load_wall(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open wall file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return wall_from_json_text(ss.str());
  } catch (ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_wall(const WallBlueprint& bp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write wall file: " + path);
  out << wall_to_json_text(bp);
  if (!out) throw IoError("failed while writing wall file: " + path);
}

}  // namespace wallplan
