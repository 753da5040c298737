// pipeline.hpp - One-call compilation: JSON text in, SVG out.
#pragma once

#include <optional>
#include <string>

#include "anno/assembler.hpp"
#include "anno/render.hpp"
#include "anno/spec.hpp"

namespace anno {

struct CompileOptions {
    double grid_size = kDefaultCellSize;
    int placement_budget = kDefaultPlacementBudget;
    std::optional<std::string> data_override;  // wins over the spec's data url
    bool dump_scene = false;
};

struct CompileOutput {
    Spec spec;
    DataTable data;
    SceneGraph scene;
    AssembleResult assembly;
    std::string svg;
    std::string scene_json;  // only when dump_scene was set
};

// Runs parse -> data -> scales -> scene -> grid -> assemble -> render.
// Validation problems raise SpecError; warnings accumulate in `sink`.
CompileOutput compile_spec_text(const std::string& text, const std::string& base_dir,
                                const CompileOptions& opts, DiagnosticSink& sink);

}  // namespace anno
