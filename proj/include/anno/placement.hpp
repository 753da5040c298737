// placement.hpp - Geometric half of the position resolver: an occupancy
// grid over the canvas plus a backtracking search that parks annotation
// boxes in free space.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anno/diagnostics.hpp"
#include "anno/scene.hpp"
#include "anno/spec.hpp"

namespace anno {

// Canvas rasterized into square cells; a cell is occupied when any visible
// scene geometry (or an already-placed annotation) touches it. Gridlines and
// the plot-area node never occupy, or nothing could ever be placed.
class OccupancyGrid {
public:
    OccupancyGrid(double width, double height, double cell_size);

    double cell_size() const { return cell_; }
    int cols() const { return cols_; }
    int rows() const { return rows_; }
    double width() const { return width_; }
    double height() const { return height_; }

    bool on_canvas(const Rect& r) const;
    Rect clamped(Rect r) const;  // shifted fully onto the canvas

    // Cells covered by a rect, half-open: a rect ending exactly on a cell
    // boundary does not spill into the next cell.
    std::vector<int> cells_for(const Rect& r) const;

    bool rect_free(const Rect& r) const;
    int count_occupied(const Rect& r) const;

    void mark_cell(int idx) { occupied_[static_cast<std::size_t>(idx)] = 1; }
    void mark_rect(const Rect& r);
    void mark_segment(Vec2 a, Vec2 b, double stroke_width);
    void mark_polygon(const std::vector<Vec2>& pts);

    // Claims the free cells under r, returning them so a backtracking
    // caller can release exactly what it took.
    std::vector<int> claim(const Rect& r);
    void release(const std::vector<int>& cells);

    bool occupied_at(int idx) const { return occupied_[static_cast<std::size_t>(idx)] != 0; }
    int total_occupied() const;

private:
    double width_, height_, cell_;
    int cols_, rows_;
    std::vector<std::uint8_t> occupied_;
};

// Rasterizes every visible scene node's geometry into a fresh grid.
OccupancyGrid build_grid(const SceneGraph& scene, double cell_size);

// One positioned box option, in preference order.
struct Candidate {
    std::string name;  // "up", "midLeft", "center", "along-start", "fixed", ...
    Rect box;
};

// Candidate boxes for an effect of `size` relative to the target bbox.
// No position / auto anchor -> 17 candidates: the 8 compass slots at gap 4
// (order up, upRight, midRight, downRight, down, downLeft, midLeft, upLeft),
// the same ring at gap 16, then center. Explicit Anchor2D -> that one slot.
// Along (1D) -> start/mid/end along the target's major axis (or the one
// named). dx/dy shift every candidate.
std::vector<Candidate> candidate_anchors(const Rect& target, Vec2 size,
                                         const std::optional<Position>& pos);

struct PlacementRequest {
    std::string id;
    std::vector<Candidate> candidates;
    bool pinned = false;  // fixed position: never moved, claims even when occupied
};

struct PlacementResult {
    std::string id;
    Rect box;
    std::string anchor_used;
    bool fallback = false;
};

// Depth-first backtracking in request order: a candidate is feasible iff its
// box is on-canvas and all covered cells are free; placed boxes claim their
// cells. The search aborts after `budget` feasibility checks. If no complete
// assignment is found, every unpinned request falls back to its least-
// occluded candidate (fewest occupied cells after clamping on-canvas, ties
// by candidate order) with fallback=true and a warning. Pinned requests
// always take their single candidate; overlap only draws a warning.
std::vector<PlacementResult> place_all(const std::vector<PlacementRequest>& requests,
                                       OccupancyGrid& grid, int budget, DiagnosticSink& sink);

inline constexpr int kDefaultPlacementBudget = 10000;
inline constexpr double kDefaultCellSize = 4;

}  // namespace anno
