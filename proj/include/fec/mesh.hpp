#pragma once

#include "fec/bernstein.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fec {

/// Simplicial mesh with rational vertices. Cell vertex lists are stored sorted by global id,
/// so every local sub-simplex ordering agrees with the global one.
struct Mesh {
    int n = 3;
    std::vector<Vec> vertices;
    std::vector<std::vector<int>> cells;

    /// All global l-simplices as sorted vertex id lists, in first-seen order.
    std::vector<std::vector<int>> simplices(int l) const
    {
        std::vector<std::vector<int>> out;
        std::set<std::vector<int>> seen;
        for (const auto& c : cells)
            for (const auto& loc : subsimplices(n, l)) {
                std::vector<int> s;
                for (int i : loc) s.push_back(c[i]);
                if (seen.insert(s).second) out.push_back(s);
            }
        return out;
    }

    std::vector<std::size_t> counts() const
    {
        std::vector<std::size_t> c;
        for (int l = 0; l <= n; ++l) c.push_back(simplices(l).size());
        return c;
    }

    long euler() const
    {
        long e = 0;
        auto c = counts();
        for (int l = 0; l <= n; ++l) e += (l % 2 == 0 ? 1 : -1) * static_cast<long>(c[l]);
        return e;
    }

    Geometry cell_geometry(std::size_t t) const
    {
        std::vector<Vec> v;
        for (int i : cells[t]) v.push_back(vertices[i]);
        return make_geometry(v);
    }
};

inline Mesh make_mesh(int n, std::vector<Vec> vertices, std::vector<std::vector<int>> cells)
{
    Mesh m;
    m.n = n;
    m.vertices = std::move(vertices);
    for (const auto& v : m.vertices)
        if (static_cast<int>(v.size()) != n) throw std::invalid_argument("mesh: vertex dimension mismatch");
    for (auto c : cells) {
        if (static_cast<int>(c.size()) != n + 1) throw std::invalid_argument("mesh: cell needs n+1 vertices");
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw std::invalid_argument("mesh: repeated vertex in cell");
        for (int i : c)
            if (i < 0 || i >= static_cast<int>(m.vertices.size())) throw std::invalid_argument("mesh: vertex id out of range");
        m.cells.push_back(c);
    }
    for (std::size_t t = 0; t < m.cells.size(); ++t) m.cell_geometry(t); // throws on degenerate cells
    return m;
}

namespace detail {
inline Vec pt(std::initializer_list<int> xs)
{
    Vec v;
    for (int x : xs) v.emplace_back(x);
    return v;
}
} // namespace detail

/// Built-in meshes: tet1, tet2, fan3 (3-D), tri2 (two triangles), int2 (two intervals).
inline Mesh reference_mesh(const std::string& name)
{
    using detail::pt;
    if (name == "tet1") return make_mesh(3, {pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})}, {{0, 1, 2, 3}});
    if (name == "tet2")
        return make_mesh(3, {pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1}), pt({1, 1, 1})},
                         {{0, 1, 2, 3}, {1, 2, 3, 4}});
    if (name == "fan3")
        return make_mesh(3,
                         {pt({0, 0, 0}), pt({0, 0, 1}), pt({1, 0, 0}), pt({0, 1, 0}), pt({-1, -1, 0}), pt({1, -1, 0})},
                         {{0, 1, 2, 3}, {0, 1, 3, 4}, {0, 1, 4, 5}});
    if (name == "tri2") return make_mesh(2, {pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})}, {{0, 1, 2}, {1, 2, 3}});
    if (name == "int2") return make_mesh(1, {pt({0}), pt({1}), pt({2})}, {{0, 1}, {1, 2}});
    throw std::invalid_argument("unknown mesh: " + name);
}

inline std::vector<std::string> reference_mesh_names() { return {"tet1", "tet2", "fan3", "tri2", "int2"}; }

/// ASCII format: `v x y z` (rationals p/q or integers) and `t i0 i1 i2 i3` (0-based). '#' starts a comment.
inline Mesh parse_mesh(std::istream& in)
{
    std::vector<Vec> verts;
    std::vector<std::vector<int>> cells;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        std::vector<std::string> tok;
        std::string w;
        while (ls >> w) tok.push_back(w);
        try {
            if (tag == "v") {
                if (tok.size() != 3) throw std::invalid_argument("vertex needs 3 coordinates");
                Vec p;
                for (const auto& s : tok) p.push_back(parse_rational(s));
                verts.push_back(p);
            } else if (tag == "t") {
                if (tok.size() != 4) throw std::invalid_argument("tet needs 4 vertex ids");
                std::vector<int> c;
                for (const auto& s : tok) c.push_back(std::stoi(s));
                cells.push_back(c);
            } else {
                throw std::invalid_argument("unknown record '" + tag + "'");
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument("mesh line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (cells.empty()) throw std::invalid_argument("mesh: no tetrahedra");
    return make_mesh(3, verts, cells);
}

inline Mesh load_mesh(const std::string& name_or_path)
{
    for (const auto& n : reference_mesh_names())
        if (n == name_or_path) return reference_mesh(n);
    std::ifstream f(name_or_path);
    if (!f) throw std::invalid_argument("cannot open mesh file: " + name_or_path);
    return parse_mesh(f);
}

} // namespace fec
