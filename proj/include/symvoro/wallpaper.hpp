#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symvoro/geometry.hpp"

namespace symvoro {

enum class GroupName {
    p1, p2, pm, pg, cm, pmm, pmg, pgg, cmm, p4, p4m, p4g, p3, p3m1, p31m, p6, p6m
};

inline constexpr std::array<GroupName, 17> kAllGroups{
    GroupName::p1,  GroupName::p2,  GroupName::pm,   GroupName::pg,   GroupName::cm,  GroupName::pmm,
    GroupName::pmg, GroupName::pgg, GroupName::cmm,  GroupName::p4,   GroupName::p4m, GroupName::p4g,
    GroupName::p3,  GroupName::p3m1, GroupName::p31m, GroupName::p6, GroupName::p6m};

std::string_view to_string(GroupName g);
std::optional<GroupName> parse_group_name(std::string_view s);

enum class LatticeFamily { Square, Hex };

std::string_view to_string(LatticeFamily f);

struct Lattice {
    Vec2 t1{1.0, 0.0};
    Vec2 t2{0.0, 1.0};
    double scale = 1.0;

    static Lattice square(double scale);
    static Lattice hex(double scale);

    Vec2 translation(int a, int b) const { return t1 * a + t2 * b; }
    Vec2 translation(double a, double b) const { return t1 * a + t2 * b; }
    /// Coordinates of v in the (t1, t2) basis.
    Vec2 to_lattice(Vec2 v) const;
    /// Area of the unit cell.
    double cell_area() const { return std::abs(cross(t1, t2)); }
};

struct GroupMeta {
    bool has_reflection = false;
    bool has_glide = false;
    LatticeFamily family = LatticeFamily::Square;
    bool curved_capable = false;
};

/// Coset representatives of a wallpaper group modulo its lattice translations.
/// Each op's translation is reduced into [0,1)^2 lattice coordinates.
struct GroupTable {
    GroupName name = GroupName::p1;
    Lattice lattice;
    std::vector<Isometry2> ops;

    std::size_t order() const { return ops.size(); }
    /// Translation part reduced modulo the lattice.
    Isometry2 reduce(const Isometry2& g) const;
    /// Index of the op congruent to g modulo lattice translations, or -1.
    int find(const Isometry2& g, double tol = 1e-9) const;
    /// Lattice translation L with g = T(L) ∘ ops[find(g)], when g is in the group.
    std::optional<std::array<int, 2>> lattice_offset(const Isometry2& g, int op, double tol = 1e-9) const;
};

GroupTable group_table(GroupName name, double scale = 1.0);
GroupMeta group_meta(GroupName name);

/// Point-group order times centering multiplicity on the conventional cell.
std::size_t expected_order(GroupName name);

struct Line {
    Point through;
    Vec2 direction;  // unit length

    double distance(Point p) const { return std::abs(cross(direction, p - through)); }
};

/// All mirror axes (pure reflections, not glides) of the group meeting `region`.
std::vector<Line> mirror_lines(const GroupTable& table, const Rect& region);

/// One transformed copy of `shape` per coset representative, in table order.
std::vector<SiteShape> orbit(const SiteShape& shape, const GroupTable& table);

struct SiteInstance {
    int id = 0;
    /// Index into the orbit list that produced this instance.
    int orbit_index = 0;
    std::array<int, 2> cell{0, 0};
    SiteShape shape;
    /// Maps the generating stroke onto this instance.
    Isometry2 placement;
    int stroke = 0;
    int op = 0;
    Rect bounds;
};

/// Lattice translates of each orbit member whose bounding box meets window
/// expanded by margin. Instances are ordered by (orbit index, a, b).
std::vector<SiteInstance> replicate(const std::vector<SiteShape>& orbit, const Lattice& lattice,
                                    const Rect& window, double margin);

}  // namespace symvoro
