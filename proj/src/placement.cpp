// placement.cpp - occupancy grid and backtracking placement search.
#include "anno/placement.hpp"

#include <algorithm>
#include <cmath>

namespace anno {

// --------------------------------------------------------------- grid --

OccupancyGrid::OccupancyGrid(double width, double height, double cell_size)
    : width_(width),
      height_(height),
      cell_(cell_size),
      cols_(std::max(1, static_cast<int>(std::ceil(width / cell_size)))),
      rows_(std::max(1, static_cast<int>(std::ceil(height / cell_size)))),
      occupied_(static_cast<std::size_t>(cols_) * static_cast<std::size_t>(rows_), 0) {}

bool OccupancyGrid::on_canvas(const Rect& r) const {
    constexpr double eps = 1e-9;
    return r.x >= -eps && r.y >= -eps && r.right() <= width_ + eps && r.bottom() <= height_ + eps;
}

Rect OccupancyGrid::clamped(Rect r) const {
    r.x = std::max(0.0, std::min(r.x, width_ - r.w));
    r.y = std::max(0.0, std::min(r.y, height_ - r.h));
    return r;
}

std::vector<int> OccupancyGrid::cells_for(const Rect& r) const {
    int x0 = std::max(0, static_cast<int>(std::floor(r.x / cell_)));
    int y0 = std::max(0, static_cast<int>(std::floor(r.y / cell_)));
    int x1 = std::min(cols_, static_cast<int>(std::ceil(r.right() / cell_)));
    int y1 = std::min(rows_, static_cast<int>(std::ceil(r.bottom() / cell_)));
    std::vector<int> out;
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) out.push_back(y * cols_ + x);
    return out;
}

bool OccupancyGrid::rect_free(const Rect& r) const {
    for (int c : cells_for(r))
        if (occupied_[static_cast<std::size_t>(c)]) return false;
    return true;
}

int OccupancyGrid::count_occupied(const Rect& r) const {
    int n = 0;
    for (int c : cells_for(r)) n += occupied_[static_cast<std::size_t>(c)] ? 1 : 0;
    return n;
}

void OccupancyGrid::mark_rect(const Rect& r) {
    for (int c : cells_for(r)) occupied_[static_cast<std::size_t>(c)] = 1;
}

void OccupancyGrid::mark_segment(Vec2 a, Vec2 b, double stroke_width) {
    double len = std::hypot(b.x - a.x, b.y - a.y);
    double pad = std::max(stroke_width, 1.0) * 0.5;
    int steps = std::max(1, static_cast<int>(std::ceil(len / (cell_ * 0.5))));
    for (int i = 0; i <= steps; ++i) {
        double t = static_cast<double>(i) / steps;
        Vec2 p{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
        mark_rect(Rect{p.x - pad, p.y - pad, 2 * pad, 2 * pad});
    }
}

namespace {

bool point_in_polygon(Vec2 p, const std::vector<Vec2>& pts) {
    bool inside = false;
    for (std::size_t i = 0, j = pts.size() - 1; i < pts.size(); j = i++) {
        if ((pts[i].y > p.y) != (pts[j].y > p.y) &&
            p.x < (pts[j].x - pts[i].x) * (p.y - pts[i].y) / (pts[j].y - pts[i].y) + pts[i].x)
            inside = !inside;
    }
    return inside;
}

}  // namespace

void OccupancyGrid::mark_polygon(const std::vector<Vec2>& pts) {
    if (pts.size() < 3) return;
    for (std::size_t i = 0; i < pts.size(); ++i)
        mark_segment(pts[i], pts[(i + 1) % pts.size()], 1.0);
    Rect bb = rect_from_points(pts);
    int x0 = std::max(0, static_cast<int>(std::floor(bb.x / cell_)));
    int y0 = std::max(0, static_cast<int>(std::floor(bb.y / cell_)));
    int x1 = std::min(cols_, static_cast<int>(std::ceil(bb.right() / cell_)));
    int y1 = std::min(rows_, static_cast<int>(std::ceil(bb.bottom() / cell_)));
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) {
            Vec2 center{(x + 0.5) * cell_, (y + 0.5) * cell_};
            if (point_in_polygon(center, pts)) occupied_[static_cast<std::size_t>(y * cols_ + x)] = 1;
        }
}

std::vector<int> OccupancyGrid::claim(const Rect& r) {
    std::vector<int> taken;
    for (int c : cells_for(r)) {
        auto& cell = occupied_[static_cast<std::size_t>(c)];
        if (!cell) {
            cell = 1;
            taken.push_back(c);
        }
    }
    return taken;
}

void OccupancyGrid::release(const std::vector<int>& cells) {
    for (int c : cells) occupied_[static_cast<std::size_t>(c)] = 0;
}

int OccupancyGrid::total_occupied() const {
    int n = 0;
    for (auto c : occupied_) n += c;
    return n;
}

OccupancyGrid build_grid(const SceneGraph& scene, double cell_size) {
    OccupancyGrid grid(scene.width, scene.height, cell_size);
    walk_scene(scene.root, [&](const SceneNode& n) {
        if (!n.style.visible) return;
        if (const auto* axis = std::get_if<AxisTag>(&n.tag))
            if (axis->part == AxisPartKind::Grid) return;
        if (std::holds_alternative<PlotAreaTag>(n.tag)) return;
        if (std::holds_alternative<std::monostate>(n.geometry)) return;
        if (const auto* poly = std::get_if<PolylineGeom>(&n.geometry)) {
            if (poly->closed) {
                grid.mark_polygon(poly->pts);
            } else {
                for (std::size_t i = 0; i + 1 < poly->pts.size(); ++i)
                    grid.mark_segment(poly->pts[i], poly->pts[i + 1], n.style.stroke_width);
            }
            return;
        }
        grid.mark_rect(n.bbox);
    });
    return grid;
}

// ---------------------------------------------------------- candidates --

namespace {

constexpr double kNearGap = 4;
constexpr double kFarGap = 16;

Rect compass_box(const Rect& t, Vec2 size, Anchor2D a, double gap) {
    double w = size.x, h = size.y;
    double cx = t.x + t.w / 2 - w / 2;
    double cy = t.y + t.h / 2 - h / 2;
    double left = t.x - gap - w;
    double right = t.right() + gap;
    double above = t.y - gap - h;
    double below = t.bottom() + gap;
    switch (a) {
    case Anchor2D::Up: return {cx, above, w, h};
    case Anchor2D::UpRight: return {right, above, w, h};
    case Anchor2D::MidRight: return {right, cy, w, h};
    case Anchor2D::DownRight: return {right, below, w, h};
    case Anchor2D::Down: return {cx, below, w, h};
    case Anchor2D::DownLeft: return {left, below, w, h};
    case Anchor2D::MidLeft: return {left, cy, w, h};
    case Anchor2D::UpLeft: return {left, above, w, h};
    case Anchor2D::Auto: break;
    }
    return {cx, cy, w, h};  // center
}

Rect centered_at(Vec2 p, Vec2 size) {
    return {p.x - size.x / 2, p.y - size.y / 2, size.x, size.y};
}

void along_candidates(const Rect& t, Vec2 size, Anchor1D which, std::vector<Candidate>& out) {
    bool horizontal = t.w >= t.h;
    double cx = t.x + t.w / 2, cy = t.y + t.h / 2;
    Vec2 start = horizontal ? Vec2{t.x, cy} : Vec2{cx, t.y};
    Vec2 mid{cx, cy};
    Vec2 end = horizontal ? Vec2{t.right(), cy} : Vec2{cx, t.bottom()};
    auto add = [&](const char* name, Vec2 p) { out.push_back({name, centered_at(p, size)}); };
    if (which == Anchor1D::Auto || which == Anchor1D::Start) add("along-start", start);
    if (which == Anchor1D::Auto || which == Anchor1D::Mid) add("along-mid", mid);
    if (which == Anchor1D::Auto || which == Anchor1D::End) add("along-end", end);
}

const Anchor2D kRing[8] = {Anchor2D::Up,       Anchor2D::UpRight, Anchor2D::MidRight,
                           Anchor2D::DownRight, Anchor2D::Down,    Anchor2D::DownLeft,
                           Anchor2D::MidLeft,   Anchor2D::UpLeft};

}  // namespace

std::vector<Candidate> candidate_anchors(const Rect& target, Vec2 size,
                                         const std::optional<Position>& pos) {
    std::vector<Candidate> out;
    double dx = pos ? pos->dx : 0, dy = pos ? pos->dy : 0;

    if (pos && pos->kind == Position::Kind::Along) {
        along_candidates(target, size, pos->along, out);
    } else if (pos && pos->kind == Position::Kind::Anchor && pos->anchor != Anchor2D::Auto) {
        out.push_back({anchor2d_name(pos->anchor), compass_box(target, size, pos->anchor, kNearGap)});
    } else {
        // auto: near ring, far ring, center
        for (Anchor2D a : kRing)
            out.push_back({anchor2d_name(a), compass_box(target, size, a, kNearGap)});
        for (Anchor2D a : kRing)
            out.push_back({std::string(anchor2d_name(a)) + "-far",
                           compass_box(target, size, a, kFarGap)});
        out.push_back({"center", compass_box(target, size, Anchor2D::Auto, 0)});
    }
    for (Candidate& c : out) {
        c.box.x += dx;
        c.box.y += dy;
    }
    return out;
}

// -------------------------------------------------------------- search --

namespace {

struct Search {
    const std::vector<const PlacementRequest*>& reqs;
    OccupancyGrid& grid;
    int budget;
    int visits = 0;
    bool aborted = false;
    std::vector<std::size_t> chosen;
    std::vector<std::vector<int>> claimed;

    bool run(std::size_t i) {
        if (i == reqs.size()) return true;
        const PlacementRequest& rq = *reqs[i];
        for (std::size_t c = 0; c < rq.candidates.size(); ++c) {
            if (++visits > budget) {
                aborted = true;
                return false;
            }
            const Rect& box = rq.candidates[c].box;
            if (!grid.on_canvas(box) || !grid.rect_free(box)) continue;
            claimed[i] = grid.claim(box);
            chosen[i] = c;
            if (run(i + 1)) return true;
            grid.release(claimed[i]);
            if (aborted) return false;
        }
        return false;
    }
};

}  // namespace

std::vector<PlacementResult> place_all(const std::vector<PlacementRequest>& requests,
                                       OccupancyGrid& grid, int budget, DiagnosticSink& sink) {
    std::vector<PlacementResult> results(requests.size());

    // Pinned boxes claim first so everything else routes around them.
    std::vector<const PlacementRequest*> open;
    std::vector<std::size_t> open_idx;
    for (std::size_t i = 0; i < requests.size(); ++i) {
        const PlacementRequest& rq = requests[i];
        if (rq.pinned) {
            const Candidate& c = rq.candidates.front();
            if (grid.count_occupied(c.box) > 0)
                sink.warn("PlacementOverlap", "",
                          "fixed position of '" + rq.id + "' overlaps existing content");
            grid.claim(c.box);
            results[i] = {rq.id, c.box, c.name, false};
        } else {
            open.push_back(&rq);
            open_idx.push_back(i);
        }
    }

    Search search{open, grid, budget, 0, false,
                  std::vector<std::size_t>(open.size()),
                  std::vector<std::vector<int>>(open.size())};
    if (search.run(0)) {
        for (std::size_t k = 0; k < open.size(); ++k) {
            const Candidate& c = open[k]->candidates[search.chosen[k]];
            results[open_idx[k]] = {open[k]->id, c.box, c.name, false};
        }
        return results;
    }

    // No conflict-free assignment (or the budget ran out): greedy
    // least-occluded fallback, clamped on-canvas.
    for (std::size_t k = 0; k < open.size(); ++k) {
        const PlacementRequest& rq = *open[k];
        std::size_t best = 0;
        int best_occ = -1;
        for (std::size_t c = 0; c < rq.candidates.size(); ++c) {
            int occ = grid.count_occupied(grid.clamped(rq.candidates[c].box));
            if (best_occ < 0 || occ < best_occ) {
                best_occ = occ;
                best = c;
            }
        }
        Rect box = grid.clamped(rq.candidates[best].box);
        grid.claim(box);
        results[open_idx[k]] = {rq.id, box, rq.candidates[best].name, true};
        sink.warn("PlacementFallback", "",
                  "no free slot for '" + rq.id + "'; using least-occluded candidate '" +
                      rq.candidates[best].name + "'");
    }
    return results;
}

}  // namespace anno
