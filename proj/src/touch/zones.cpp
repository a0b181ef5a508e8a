#include "danse/touch/zones.hpp"

#include <cmath>
#include <stdexcept>

namespace danse::touch {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

const char* to_string(Zone zone) {
  switch (zone) {
    case Zone::SignLeft:
      return "signLeft";
    case Zone::SignRight:
      return "signRight";
    case Zone::PlayArea:
      return "playArea";
    case Zone::Crown:
      return "crown";
    case Zone::Dead:
      return "dead";
  }
  return "?";
}

void validate(const ZoneLayout& layout) {
  if (!(layout.min_sign_separation > 0)) throw std::invalid_argument("min_sign_separation must be positive");
  if (layout.sign_left.intersects(layout.play_area) || layout.sign_right.intersects(layout.play_area)) {
    throw std::invalid_argument("sign zones must not overlap the play area");
  }
  for (const Rect* r : {&layout.sign_left, &layout.sign_right, &layout.play_area}) {
    if (!(r->x0 < r->x1 && r->y0 < r->y1) || r->x0 < 0 || r->y0 < 0 || r->x1 > 1 || r->y1 > 1) {
      throw std::invalid_argument("zone rectangles must be non-empty and inside the unit square");
    }
  }
}

namespace {
Rect mirror(const Rect& r) { return {1.0 - r.x1, r.y0, 1.0 - r.x0, r.y1}; }
}  // namespace

ZoneLayout default_layout(Hand trained) {
  // Laid out for a right-handed trainee; the left hand holds the signs.
  ZoneLayout layout;
  layout.sign_left = {0.04, 0.14, 0.20, 0.36};
  layout.sign_right = {0.04, 0.64, 0.20, 0.86};
  layout.play_area = {0.28, 0.02, 0.98, 0.74};
  layout.min_sign_separation = 0.15;
  if (trained == Hand::Left) {
    layout.sign_left = mirror(layout.sign_left);
    layout.sign_right = mirror(layout.sign_right);
    layout.play_area = mirror(layout.play_area);
  }
  return layout;
}

Rect default_crown_zone(Hand trained) {
  Rect crown{0.48, 0.78, 0.78, 0.98};
  return trained == Hand::Left ? mirror(crown) : crown;
}

Zone classify(Point p, const ZoneLayout& layout) {
  if (layout.crown_zone && layout.crown_zone->contains(p)) return Zone::Crown;
  if (layout.sign_left.contains(p)) return Zone::SignLeft;
  if (layout.sign_right.contains(p)) return Zone::SignRight;
  if (layout.play_area.contains(p)) return Zone::PlayArea;
  return Zone::Dead;
}

}  // namespace danse::touch
