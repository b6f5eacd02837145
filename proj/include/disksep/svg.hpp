#pragma once

#include <string>

#include "disksep/packing.hpp"
#include "disksep/separator.hpp"

namespace disksep {

/// Static SVG 1.1 scene of a packing. When a separator is given its disks are
/// highlighted and the circles of radius 1, x and 2 (mapped back into packing
/// coordinates through norm_disk, the k-enclosing disk of the centers) are
/// drawn dashed. Deterministic: identical input yields identical bytes.
std::string render_svg(const Packing& p, const SeparatorResult* sep,
                       const Disk* norm_disk);

}  // namespace disksep
