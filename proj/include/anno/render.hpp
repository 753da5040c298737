// render.hpp - Deterministic SVG serialization of a scene plus annotations.
#pragma once

#include <string>
#include <vector>

#include "anno/assembler.hpp"
#include "anno/scene.hpp"

namespace anno {

// Same scene + elements always produce byte-identical markup: attributes are
// emitted in a fixed order and every number is formatted to two decimals.
std::string render_svg(const SceneGraph& scene, const std::vector<AnnoElement>& annotations);

std::string xml_escape(const std::string& s);

}  // namespace anno
