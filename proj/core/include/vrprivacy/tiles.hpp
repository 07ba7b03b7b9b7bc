#pragma once

#include <cstdint>
#include <vector>

#include "vrprivacy/sphere.hpp"

namespace vrp {

// Equirectangular 4x8 tiling of the 360-degree frame. Tile ids are
// row * kTileCols + col; row 0 touches the north pole, col 0 starts at
// azimuth -pi.
inline constexpr int kTileRows = 4;
inline constexpr int kTileCols = 8;
inline constexpr int kTileCount = kTileRows * kTileCols;

int TileRow(int tile);
int TileCol(int tile);
int TileOf(const SpherePoint& p);

// Tiles of a rows x cols block centred on `center_tile`. Rows are shifted to
// stay inside the frame, columns wrap around. Order is row-major from the
// block's top-left.
std::vector<int> TileBlock(int center_tile, int rows, int cols);

// 3x3 field of view around the tile containing `gaze`.
inline constexpr int kFovRows = 3;
inline constexpr int kFovCols = 3;
std::vector<int> FovTiles(const SpherePoint& gaze);

enum class QualityLevel : std::uint8_t { kNone, kLow, kMid, kHigh };

const char* ToString(QualityLevel level);
// Per-tile bitrate in Mbit/s: 0, 1.8, 2.7, 6.0.
double BitrateMbps(QualityLevel level);
// Normalised utility in [0, 1] used by the QoE surrogate.
double QualityUtility(QualityLevel level);

enum class ZoneShape : std::uint8_t { k3x3, k3x5, k3x7, k4x7, k4x8 };

inline constexpr int kZoneShapeCount = 5;
int ZoneRows(ZoneShape shape);
int ZoneCols(ZoneShape shape);
const char* ToString(ZoneShape shape);

// round(4 e / pi), i.e. one shape step per 45 degrees of uploaded error.
ZoneShape ZoneShapeFromError(double uploaded_error);

struct Zone {
  ZoneShape shape = ZoneShape::k3x3;
  int center_tile = 0;
  std::vector<int> tiles;

  bool Contains(int tile) const;
};

Zone MakeZone(ZoneShape shape, int center_tile);
Zone ZoneFromError(double uploaded_error, int center_tile);

}  // namespace vrp
