#include "vrprivacy/tiles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vrp {
namespace {

void RequireTile(int tile) {
  if (tile < 0 || tile >= kTileCount) {
    throw std::out_of_range("tile id " + std::to_string(tile) + " outside [0, 32)");
  }
}

struct ZoneDims {
  int rows;
  int cols;
};

constexpr ZoneDims kZoneDims[kZoneShapeCount] = {{3, 3}, {3, 5}, {3, 7}, {4, 7}, {4, 8}};

}  // namespace

int TileRow(int tile) {
  RequireTile(tile);
  return tile / kTileCols;
}

int TileCol(int tile) {
  RequireTile(tile);
  return tile % kTileCols;
}

int TileOf(const SpherePoint& p) {
  const double azimuth = std::atan2(p.y(), p.x());
  const double polar = std::acos(std::clamp(p.z(), -1.0, 1.0));
  int col = static_cast<int>(std::floor((azimuth + kPi) / (2.0 * kPi) * kTileCols));
  col = ((col % kTileCols) + kTileCols) % kTileCols;
  const int row = std::clamp(static_cast<int>(std::floor(polar / kPi * kTileRows)), 0,
                             kTileRows - 1);
  return row * kTileCols + col;
}

std::vector<int> TileBlock(int center_tile, int rows, int cols) {
  RequireTile(center_tile);
  if (rows < 1 || rows > kTileRows || cols < 1 || cols > kTileCols) {
    throw std::invalid_argument("tile block dimensions out of range");
  }
  const int r0 = std::clamp(TileRow(center_tile) - (rows - 1) / 2, 0, kTileRows - rows);
  const int c0 = cols == kTileCols ? 0 : TileCol(center_tile) - (cols - 1) / 2;
  std::vector<int> tiles;
  tiles.reserve(static_cast<std::size_t>(rows * cols));
  for (int r = r0; r < r0 + rows; ++r) {
    for (int c = c0; c < c0 + cols; ++c) {
      tiles.push_back(r * kTileCols + ((c % kTileCols) + kTileCols) % kTileCols);
    }
  }
  return tiles;
}

std::vector<int> FovTiles(const SpherePoint& gaze) {
  return TileBlock(TileOf(gaze), kFovRows, kFovCols);
}

const char* ToString(QualityLevel level) {
  switch (level) {
    case QualityLevel::kNone: return "none";
    case QualityLevel::kLow: return "low";
    case QualityLevel::kMid: return "mid";
    case QualityLevel::kHigh: return "high";
  }
  return "?";
}

double BitrateMbps(QualityLevel level) {
  switch (level) {
    case QualityLevel::kNone: return 0.0;
    case QualityLevel::kLow: return 1.8;
    case QualityLevel::kMid: return 2.7;
    case QualityLevel::kHigh: return 6.0;
  }
  return 0.0;
}

double QualityUtility(QualityLevel level) {
  return static_cast<double>(static_cast<int>(level)) / 3.0;
}

int ZoneRows(ZoneShape shape) { return kZoneDims[static_cast<int>(shape)].rows; }
int ZoneCols(ZoneShape shape) { return kZoneDims[static_cast<int>(shape)].cols; }

const char* ToString(ZoneShape shape) {
  static constexpr const char* kNames[kZoneShapeCount] = {"3x3", "3x5", "3x7", "4x7", "4x8"};
  return kNames[static_cast<int>(shape)];
}

ZoneShape ZoneShapeFromError(double uploaded_error) {
  if (!(uploaded_error >= 0.0 && uploaded_error <= kPi)) {
    throw std::invalid_argument("uploaded error must lie in [0, pi]");
  }
  const int index = static_cast<int>(std::lround(4.0 * uploaded_error / kPi));
  return static_cast<ZoneShape>(std::clamp(index, 0, kZoneShapeCount - 1));
}

bool Zone::Contains(int tile) const {
  return std::find(tiles.begin(), tiles.end(), tile) != tiles.end();
}

Zone MakeZone(ZoneShape shape, int center_tile) {
  return Zone{shape, center_tile, TileBlock(center_tile, ZoneRows(shape), ZoneCols(shape))};
}

Zone ZoneFromError(double uploaded_error, int center_tile) {
  return MakeZone(ZoneShapeFromError(uploaded_error), center_tile);
}

}  // namespace vrp
