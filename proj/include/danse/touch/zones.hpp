#pragma once

#include <optional>

namespace danse::touch {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

/// Closed axis-aligned rectangle in normalized coordinates.
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  bool contains(Point p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  Point center() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool intersects(const Rect& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class Hand { Left, Right };

enum class Zone { SignLeft, SignRight, PlayArea, Crown, Dead };

const char* to_string(Zone zone);

struct ZoneLayout {
  Rect sign_left;
  Rect sign_right;
  Rect play_area;
  double min_sign_separation = 0.15;
  /// Only set while a crown prompt is displayed.
  std::optional<Rect> crown_zone;
};

/// Throws std::invalid_argument when signs overlap the play area or the
/// separation is not positive.
void validate(const ZoneLayout& layout);

/// Default screen split for a child training `trained` hand: the stop signs
/// sit on the other hand's side, the play area and crown on the trained side.
ZoneLayout default_layout(Hand trained);

/// Where the crown hand picture goes for `trained`; not part of the layout
/// until a prompt is active.
Rect default_crown_zone(Hand trained);

/// Priority on overlaps: Crown, then signs, then play area.
Zone classify(Point p, const ZoneLayout& layout);

}  // namespace danse::touch
