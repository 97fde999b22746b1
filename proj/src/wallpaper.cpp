#include "symvoro/wallpaper.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace symvoro {

namespace {

constexpr std::array<std::string_view, 17> kNames{
    "p1", "p2", "pm", "pg", "cm", "pmm", "pmg", "pgg", "cmm",
    "p4", "p4m", "p4g", "p3", "p3m1", "p31m", "p6", "p6m"};

const double kSqrt3_2 = std::sqrt(3.0) / 2.0;

// cos/sin of k * 60 degrees, written out so the hex tables carry no
// trigonometric rounding beyond the representation of sqrt(3)/2.
std::pair<double, double> cos_sin_60(int k) {
    switch (((k % 6) + 6) % 6) {
        case 0: return {1.0, 0.0};
        case 1: return {0.5, kSqrt3_2};
        case 2: return {-0.5, kSqrt3_2};
        case 3: return {-1.0, 0.0};
        case 4: return {-0.5, -kSqrt3_2};
        default: return {0.5, -kSqrt3_2};
    }
}

Isometry2 hex_rotation(int k60) {
    const auto [c, s] = cos_sin_60(k60);
    return {{c, -s, s, c}, {}};
}

// Mirror through the origin along the direction k30 * 30 degrees.
Isometry2 hex_mirror(int k30) {
    const auto [c, s] = cos_sin_60(k30);
    return {{c, s, s, -c}, {}};
}

// Square-lattice op written in fractional coordinates: x' = m00 x + m01 y + tx.
struct FracOp {
    int m00, m01, m10, m11;
    double tx, ty;
};

std::vector<FracOp> square_ops(GroupName name) {
    const FracOp id{1, 0, 0, 1, 0, 0};
    const FracOp half_turn{-1, 0, 0, -1, 0, 0};
    const FracOp rot90{0, -1, 1, 0, 0, 0};
    const FracOp rot270{0, 1, -1, 0, 0, 0};
    const FracOp mirror_x{-1, 0, 0, 1, 0, 0};  // x -> -x
    const FracOp mirror_y{1, 0, 0, -1, 0, 0};  // y -> -y
    auto centered = [](std::vector<FracOp> ops) {
        const std::size_t n = ops.size();
        for (std::size_t i = 0; i < n; ++i) {
            FracOp o = ops[i];
            o.tx += 0.5;
            o.ty += 0.5;
            ops.push_back(o);
        }
        return ops;
    };
    switch (name) {
        case GroupName::p1: return {id};
        case GroupName::p2: return {id, half_turn};
        case GroupName::pm: return {id, mirror_x};
        case GroupName::pg: return {id, {-1, 0, 0, 1, 0.0, 0.5}};
        case GroupName::cm: return centered({id, mirror_x});
        case GroupName::pmm: return {id, half_turn, mirror_x, mirror_y};
        case GroupName::pmg: return {id, half_turn, {-1, 0, 0, 1, 0.5, 0.0}, {1, 0, 0, -1, 0.5, 0.0}};
        case GroupName::pgg: return {id, half_turn, {-1, 0, 0, 1, 0.5, 0.5}, {1, 0, 0, -1, 0.5, 0.5}};
        case GroupName::cmm: return centered({id, half_turn, mirror_x, mirror_y});
        case GroupName::p4: return {id, rot90, half_turn, rot270};
        case GroupName::p4m:
            return {id, rot90, half_turn, rot270, mirror_x, mirror_y, {0, 1, 1, 0, 0, 0}, {0, -1, -1, 0, 0, 0}};
        case GroupName::p4g:
            return {id,
                    rot90,
                    half_turn,
                    rot270,
                    {-1, 0, 0, 1, 0.5, 0.5},
                    {1, 0, 0, -1, 0.5, 0.5},
                    {0, 1, 1, 0, 0.5, 0.5},
                    {0, -1, -1, 0, 0.5, 0.5}};
        default: return {};
    }
}

std::vector<Isometry2> hex_ops(GroupName name) {
    std::vector<Isometry2> ops;
    const int rot_step = (name == GroupName::p6 || name == GroupName::p6m) ? 1 : 2;
    for (int k = 0; k < 6; k += rot_step) ops.push_back(hex_rotation(k));
    switch (name) {
        case GroupName::p3m1:
            for (int k : {1, 3, 5}) ops.push_back(hex_mirror(k));
            break;
        case GroupName::p31m:
            for (int k : {0, 2, 4}) ops.push_back(hex_mirror(k));
            break;
        case GroupName::p6m:
            for (int k = 0; k < 6; ++k) ops.push_back(hex_mirror(k));
            break;
        default: break;
    }
    return ops;
}

double wrap_unit(double v) {
    v -= std::floor(v);
    if (v > 1.0 - 1e-9) v = 0.0;
    return v;
}

double distance_to_integer(double v) { return std::abs(v - std::round(v)); }

Vec2 mirror_axis(const Isometry2& g) {
    // Eigenvector of the reflection matrix [[c, s], [s, -c]] for eigenvalue +1.
    const double theta = 0.5 * std::atan2(g.linear[1], g.linear[0]);
    return {std::cos(theta), std::sin(theta)};
}

}  // namespace

std::string_view to_string(GroupName g) { return kNames[static_cast<std::size_t>(g)]; }

std::optional<GroupName> parse_group_name(std::string_view s) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == s) return static_cast<GroupName>(i);
    }
    return std::nullopt;
}

std::string_view to_string(LatticeFamily f) { return f == LatticeFamily::Square ? "square" : "hex"; }

Lattice Lattice::square(double scale) { return {{scale, 0.0}, {0.0, scale}, scale}; }

Lattice Lattice::hex(double scale) { return {{scale, 0.0}, {0.5 * scale, kSqrt3_2 * scale}, scale}; }

Vec2 Lattice::to_lattice(Vec2 v) const {
    const double det = cross(t1, t2);
    return {cross(v, t2) / det, cross(t1, v) / det};
}

Isometry2 GroupTable::reduce(const Isometry2& g) const {
    const Vec2 f = lattice.to_lattice(g.translation);
    Isometry2 r = g;
    r.translation = lattice.translation(wrap_unit(f.x), wrap_unit(f.y));
    return r;
}

int GroupTable::find(const Isometry2& g, double tol) const {
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Isometry2& o = ops[i];
        bool same = true;
        for (int k = 0; k < 4 && same; ++k) same = std::abs(o.linear[k] - g.linear[k]) <= tol;
        if (!same) continue;
        const Vec2 d = lattice.to_lattice(g.translation - o.translation);
        if (distance_to_integer(d.x) <= tol && distance_to_integer(d.y) <= tol) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

std::optional<std::array<int, 2>> GroupTable::lattice_offset(const Isometry2& g, int op, double tol) const {
    if (op < 0 || static_cast<std::size_t>(op) >= ops.size()) return std::nullopt;
    const Vec2 d = lattice.to_lattice(g.translation - ops[op].translation);
    if (distance_to_integer(d.x) > tol || distance_to_integer(d.y) > tol) return std::nullopt;
    return std::array<int, 2>{static_cast<int>(std::lround(d.x)), static_cast<int>(std::lround(d.y))};
}

std::size_t expected_order(GroupName name) {
    switch (name) {
        case GroupName::p1: return 1;
        case GroupName::p2:
        case GroupName::pm:
        case GroupName::pg: return 2;
        case GroupName::p3: return 3;
        case GroupName::cm:
        case GroupName::pmm:
        case GroupName::pmg:
        case GroupName::pgg:
        case GroupName::p4: return 4;
        case GroupName::p3m1:
        case GroupName::p31m:
        case GroupName::p6: return 6;
        case GroupName::cmm:
        case GroupName::p4m:
        case GroupName::p4g: return 8;
        case GroupName::p6m: return 12;
    }
    return 0;
}

GroupTable group_table(GroupName name, double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw GeometryError("lattice scale must be positive");
    GroupTable table;
    table.name = name;
    const GroupMeta meta = group_meta(name);
    if (meta.family == LatticeFamily::Square) {
        table.lattice = Lattice::square(scale);
        for (const FracOp& f : square_ops(name)) {
            Isometry2 g{{double(f.m00), double(f.m01), double(f.m10), double(f.m11)},
                        table.lattice.translation(f.tx, f.ty)};
            table.ops.push_back(table.reduce(g));
        }
    } else {
        table.lattice = Lattice::hex(scale);
        table.ops = hex_ops(name);
    }
    return table;
}

GroupMeta group_meta(GroupName name) {
    GroupMeta m;
    switch (name) {
        case GroupName::p3:
        case GroupName::p3m1:
        case GroupName::p31m:
        case GroupName::p6:
        case GroupName::p6m: m.family = LatticeFamily::Hex; break;
        default: m.family = LatticeFamily::Square; break;
    }
    switch (name) {
        case GroupName::pm:
        case GroupName::cm:
        case GroupName::pmm:
        case GroupName::pmg:
        case GroupName::cmm:
        case GroupName::p4m:
        case GroupName::p4g:
        case GroupName::p3m1:
        case GroupName::p31m:
        case GroupName::p6m: m.has_reflection = true; break;
        default: break;
    }
    switch (name) {
        case GroupName::pg:
        case GroupName::cm:
        case GroupName::pmg:
        case GroupName::pgg:
        case GroupName::cmm:
        case GroupName::p4m:
        case GroupName::p4g:
        case GroupName::p3m1:
        case GroupName::p31m:
        case GroupName::p6m: m.has_glide = true; break;
        default: break;
    }
    switch (name) {
        case GroupName::p1:
        case GroupName::p2:
        case GroupName::pg:
        case GroupName::p4:
        case GroupName::p3:
        case GroupName::p6: m.curved_capable = true; break;
        default: break;
    }
    return m;
}

std::vector<Line> mirror_lines(const GroupTable& table, const Rect& region) {
    const Lattice& lat = table.lattice;
    const Point c0 = region.center();
    const double radius = 0.5 * std::hypot(region.width(), region.height());
    // Representative points (t + L) / 2 of each mirror lie along the mirror at
    // lattice spacing, so every axis meeting the region has one within
    // radius + 2 cells of the region centre.
    const double reach = 2.0 * (radius + 2.0 * lat.scale);
    std::map<std::pair<long long, long long>, Line> unique;
    for (const Isometry2& op : table.ops) {
        if (!op.reverses_orientation()) continue;
        Vec2 u = mirror_axis(op);
        if (u.x < -1e-12 || (std::abs(u.x) <= 1e-12 && u.y < 0.0)) u = {-u.x, -u.y};
        const Vec2 n{-u.y, u.x};
        const Point target = c0 * 2.0 - op.translation;
        double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
        for (double sx : {-reach, reach}) {
            for (double sy : {-reach, reach}) {
                const Vec2 f = lat.to_lattice(target + Vec2{sx, sy});
                amin = std::min(amin, f.x);
                amax = std::max(amax, f.x);
                bmin = std::min(bmin, f.y);
                bmax = std::max(bmax, f.y);
            }
        }
        for (int a = int(std::floor(amin)); a <= int(std::ceil(amax)); ++a) {
            for (int b = int(std::floor(bmin)); b <= int(std::ceil(bmax)); ++b) {
                const Vec2 t = op.translation + lat.translation(a, b);
                if (std::abs(dot(t, u)) > 1e-9 * lat.scale) continue;  // glide, not mirror
                const Line line{t * 0.5, u};
                if (line.distance(c0) > radius) continue;
                const double angle = std::atan2(u.y, u.x);
                const double offset = dot(n, line.through);
                const auto key = std::make_pair(std::llround(angle * 1e8), std::llround(offset / lat.scale * 1e8));
                unique.emplace(key, line);
            }
        }
    }
    std::vector<Line> lines;
    lines.reserve(unique.size());
    for (auto& [key, line] : unique) lines.push_back(line);
    return lines;
}

std::vector<SiteShape> orbit(const SiteShape& shape, const GroupTable& table) {
    std::vector<SiteShape> out;
    out.reserve(table.ops.size());
    for (const Isometry2& g : table.ops) out.push_back(apply_isometry(g, shape));
    return out;
}

std::vector<SiteInstance> replicate(const std::vector<SiteShape>& orbit, const Lattice& lattice,
                                    const Rect& window, double margin) {
    if (window.degenerate()) throw GeometryError("degenerate window");
    if (!(margin >= 0.0)) throw GeometryError("replication margin must be non-negative");
    const Rect region = window.expanded(margin);
    std::vector<SiteInstance> out;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
        const SiteShape& shape = orbit[k];
        const Rect b = shape.bounds();
        // Translations L with (b + L) meeting region form this box.
        const Rect q{region.xmin - b.xmax, region.ymin - b.ymax, region.xmax - b.xmin, region.ymax - b.ymin};
        double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
        for (double x : {q.xmin, q.xmax}) {
            for (double y : {q.ymin, q.ymax}) {
                const Vec2 f = lattice.to_lattice({x, y});
                amin = std::min(amin, f.x);
                amax = std::max(amax, f.x);
                bmin = std::min(bmin, f.y);
                bmax = std::max(bmax, f.y);
            }
        }
        for (int a = int(std::floor(amin)) - 1; a <= int(std::ceil(amax)) + 1; ++a) {
            for (int bb = int(std::floor(bmin)) - 1; bb <= int(std::ceil(bmax)) + 1; ++bb) {
                const Vec2 t = lattice.translation(a, bb);
                const Rect placed = b.translated(t);
                if (!placed.intersects(region)) continue;
                SiteInstance inst;
                inst.id = static_cast<int>(out.size());
                inst.orbit_index = static_cast<int>(k);
                inst.cell = {a, bb};
                inst.placement = Isometry2::translation_by(t);
                inst.shape = apply_isometry(inst.placement, shape);
                inst.bounds = inst.shape.bounds();
                out.push_back(std::move(inst));
            }
        }
    }
    return out;
}

}  // namespace symvoro
