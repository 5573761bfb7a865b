#include "wolff/geometry.hpp"

#include <cmath>
#include <sstream>

#include "wolff/errors.hpp"

namespace wolff {

std::int64_t lattice_coordinate(double x, int level, double shift) {
    const double t = (x - shift) * std::ldexp(1.0, -level);
    if (!(std::abs(t) < 0x1.0p62)) {
        throw Error("lattice_coordinate: point too far from the lattice origin at this level");
    }
    return static_cast<std::int64_t>(std::floor(t));
}

double DyadicCube::side() const {
    return std::ldexp(1.0, level);
}

double DyadicCube::lower(int axis) const {
    return static_cast<double>(index[axis]) * side() + shift[axis];
}

bool DyadicCube::contains(std::span<const double> x) const {
    for (int a = 0; a < dim(); ++a) {
        if (lattice_coordinate(x[a], level, shift[a]) != index[a]) return false;
    }
    return true;
}

DyadicCube DyadicCube::parent() const {
    DyadicCube p{level + 1, index, shift};
    for (auto &k : p.index) k >>= 1;
    return p;
}

DyadicCube DyadicCube::child(unsigned selector) const {
    DyadicCube c{level - 1, index, shift};
    for (int a = 0; a < dim(); ++a) {
        c.index[a] = (index[a] << 1) | static_cast<std::int64_t>((selector >> a) & 1u);
    }
    return c;
}

DyadicCube DyadicCube::ancestor_at(int level_to) const {
    if (level_to < level) throw Error("ancestor_at: target level finer than the cube");
    DyadicCube p{level_to, index, shift};
    for (auto &k : p.index) k >>= (level_to - level);
    return p;
}

std::string DyadicCube::to_string() const {
    std::ostringstream os;
    os << "Q(level=" << level << ", index=(";
    for (int a = 0; a < dim(); ++a) os << (a ? "," : "") << index[a];
    os << "))";
    return os.str();
}

DyadicCube cube_at(std::span<const double> x, int level, std::span<const double> shift) {
    DyadicCube q;
    q.level = level;
    q.index.resize(x.size());
    q.shift.assign(shift.begin(), shift.end());
    for (std::size_t a = 0; a < x.size(); ++a) {
        q.index[a] = lattice_coordinate(x[a], level, shift[a]);
    }
    return q;
}

} // namespace wolff
