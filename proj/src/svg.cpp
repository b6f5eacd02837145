#include "disksep/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <unordered_set>

namespace disksep {

namespace {

std::string num(Real v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9Lg", v);
  return buf;
}

// SVG's y-axis points down; emit mirrored y throughout.
void circle_tag(std::string& out, Point2 c, Real r, const std::string& style) {
  out += "  <circle cx=\"" + num(c.x) + "\" cy=\"" + num(-c.y) + "\" r=\"" +
         num(r) + "\" " + style + "/>\n";
}

}  // namespace

std::string render_svg(const Packing& p, const SeparatorResult* sep,
                       const Disk* norm_disk) {
  Real min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  auto grow = [&](Point2 c, Real r) {
    if (first) {
      min_x = c.x - r;
      max_x = c.x + r;
      min_y = -c.y - r;
      max_y = -c.y + r;
      first = false;
      return;
    }
    min_x = std::min(min_x, c.x - r);
    max_x = std::max(max_x, c.x + r);
    min_y = std::min(min_y, -c.y - r);
    max_y = std::max(max_y, -c.y + r);
  };
  for (const Disk& d : p.disks) grow(d.center, d.radius);
  if (norm_disk) grow(norm_disk->center, 2 * norm_disk->radius);

  const Real span = std::max(max_x - min_x, max_y - min_y);
  const Real margin = span > 0 ? span * 0.04L : 1.0L;
  min_x -= margin;
  min_y -= margin;
  max_x += margin;
  max_y += margin;
  const Real width = max_x - min_x, height = max_y - min_y;
  const Real stroke = std::max(width, height) * 0.0015L;

  std::unordered_set<int> in_separator;
  if (sep)
    in_separator.insert(sep->separator.begin(), sep->separator.end());

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" +
         num(min_x) + " " + num(min_y) + " " + num(width) + " " + num(height) +
         "\" width=\"900\">\n";

  const std::string plain = "fill=\"#cdd9e5\" fill-opacity=\"0.55\" "
                            "stroke=\"#39536b\" stroke-width=\"" +
                            num(stroke) + "\"";
  const std::string marked = "fill=\"#e8a6a6\" fill-opacity=\"0.8\" "
                             "stroke=\"#a11d1d\" stroke-width=\"" +
                             num(stroke) + "\"";
  for (std::size_t i = 0; i < p.disks.size(); ++i) {
    const Disk& d = p.disks[i];
    const bool hot = in_separator.count(static_cast<int>(i)) > 0;
    circle_tag(out, d.center, d.radius, hot ? marked : plain);
  }

  if (sep && norm_disk) {
    const Real unit = norm_disk->radius;
    const std::string dashed = "fill=\"none\" stroke=\"#666666\" "
                               "stroke-width=\"" + num(stroke) +
                               "\" stroke-dasharray=\"" + num(stroke * 6) + " " +
                               num(stroke * 4) + "\"";
    const std::string cut = "fill=\"none\" stroke=\"#a11d1d\" stroke-width=\"" +
                            num(stroke * 1.6L) + "\"";
    circle_tag(out, norm_disk->center, unit, dashed);
    circle_tag(out, norm_disk->center, 2 * unit, dashed);
    circle_tag(out, norm_disk->center, sep->x * unit, cut);
  }

  out += "</svg>\n";
  return out;
}

}  // namespace disksep
