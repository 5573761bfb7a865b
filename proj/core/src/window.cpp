#include "wolff/window.hpp"

#include <algorithm>
#include <cmath>

#include "wolff/errors.hpp"

namespace wolff {

namespace {
constexpr int kMaxDepth = 24;
constexpr std::size_t kMaxCubes = std::size_t{1} << 28;
} // namespace

LatticeWindow::LatticeWindow(int n,
                             std::vector<double> shift,
                             int level_min,
                             int level_max,
                             std::vector<std::vector<std::int64_t>> roots)
        : n_(n)
        , shift_(std::move(shift))
        , level_min_(level_min)
        , level_max_(level_max)
        , roots_(std::move(roots)) {
    if (n_ < 1 || n_ > 3) throw Error("window: dimension must be 1, 2, or 3");
    if (static_cast<int>(shift_.size()) != n_) throw Error("window: shift has wrong dimension");
    if (level_min_ > level_max_) throw Error("window: level_min must not exceed level_max");
    if (level_max_ - level_min_ > kMaxDepth) throw Error("window: depth too large");
    if (std::abs(level_min_) > 48 || std::abs(level_max_) > 48) {
        throw Error("window: levels out of the supported range");
    }
    if (roots_.empty()) throw Error("window: needs at least one root");
    for (const auto &r : roots_) {
        if (static_cast<int>(r.size()) != n_) throw Error("window: root index has wrong dimension");
    }
    std::sort(roots_.begin(), roots_.end());
    if (std::adjacent_find(roots_.begin(), roots_.end()) != roots_.end()) {
        throw Error("window: duplicate root");
    }

    depth_offset_.resize(static_cast<std::size_t>(depth()) + 2, 0);
    std::size_t count = 0;
    for (int d = 0; d <= depth(); ++d) {
        depth_offset_[d] = count;
        count += depth_count(d);
    }
    depth_offset_[static_cast<std::size_t>(depth()) + 1] = count;
    cubes_per_root_ = count;
    cube_count_ = count * roots_.size();
    if (cube_count_ > kMaxCubes) throw Error("window: cube count too large");
}

int LatticeWindow::depth_of(CubeId id) const {
    const std::size_t rem = id % cubes_per_root_;
    int d = 0;
    while (depth_offset_[static_cast<std::size_t>(d) + 1] <= rem) ++d;
    return d;
}

DyadicCube LatticeWindow::cube(CubeId id) const {
    const std::uint32_t root = static_cast<std::uint32_t>(id / cubes_per_root_);
    const std::size_t rem = id % cubes_per_root_;
    const int d = depth_of(id);
    const std::int64_t path = static_cast<std::int64_t>(rem - depth_offset_[d]);

    DyadicCube q;
    q.level = level_max_ - d;
    q.shift = shift_;
    q.index = roots_[root];
    for (int t = 1; t <= d; ++t) {
        const auto digit = (path >> (static_cast<std::int64_t>(n_) * (d - t))) & ((1 << n_) - 1);
        for (int a = 0; a < n_; ++a) {
            q.index[a] = (q.index[a] << 1) | ((digit >> a) & 1);
        }
    }
    return q;
}

CubeId LatticeWindow::id_of(int level, std::span<const std::int64_t> index) const {
    if (level < level_min_ || level > level_max_) return kNoCube;
    if (static_cast<int>(index.size()) != n_) return kNoCube;
    const int d = level_max_ - level;

    std::vector<std::int64_t> root(n_);
    for (int a = 0; a < n_; ++a) root[a] = index[a] >> d;
    const auto it = std::lower_bound(roots_.begin(), roots_.end(), root);
    if (it == roots_.end() || *it != root) return kNoCube;
    const auto root_ord = static_cast<std::uint32_t>(it - roots_.begin());

    std::int64_t path = 0;
    for (int t = 1; t <= d; ++t) {
        std::int64_t digit = 0;
        for (int a = 0; a < n_; ++a) {
            digit |= ((index[a] >> (d - t)) & 1) << a;
        }
        path = (path << n_) | digit;
    }
    return static_cast<CubeId>(root_ord * cubes_per_root_ + depth_offset_[d] +
                               static_cast<std::size_t>(path));
}

CubeId LatticeWindow::parent_id(CubeId id) const {
    const int d = depth_of(id);
    if (d == 0) return kNoCube;
    const std::size_t root_base = (id / cubes_per_root_) * cubes_per_root_;
    const std::int64_t path =
            static_cast<std::int64_t>(id % cubes_per_root_ - depth_offset_[d]);
    return static_cast<CubeId>(root_base + depth_offset_[d - 1] +
                               static_cast<std::size_t>(path >> n_));
}

CubeId LatticeWindow::child_id(CubeId id, unsigned selector) const {
    const int d = depth_of(id);
    const std::size_t root_base = (id / cubes_per_root_) * cubes_per_root_;
    const std::int64_t path =
            static_cast<std::int64_t>(id % cubes_per_root_ - depth_offset_[d]);
    return static_cast<CubeId>(root_base + depth_offset_[d + 1] +
                               static_cast<std::size_t>((path << n_) | selector));
}

bool LatticeWindow::is_ancestor(CubeId coarse, CubeId fine) const {
    if (coarse / cubes_per_root_ != fine / cubes_per_root_) return false;
    const int dc = depth_of(coarse), df = depth_of(fine);
    if (dc > df) return false;
    const std::int64_t pc =
            static_cast<std::int64_t>(coarse % cubes_per_root_ - depth_offset_[dc]);
    const std::int64_t pf =
            static_cast<std::int64_t>(fine % cubes_per_root_ - depth_offset_[df]);
    return (pf >> (static_cast<std::int64_t>(n_) * (df - dc))) == pc;
}

CubeId LatticeWindow::depth_begin(std::uint32_t root_ordinal, int d) const {
    return static_cast<CubeId>(root_ordinal * cubes_per_root_ + depth_offset_[d]);
}

std::optional<LatticeWindow::Location> LatticeWindow::locate(std::span<const double> x) const {
    const int d = depth();
    std::vector<std::int64_t> finest(n_), root(n_);
    for (int a = 0; a < n_; ++a) {
        finest[a] = lattice_coordinate(x[a], level_min_, shift_[a]);
        root[a] = finest[a] >> d;
    }
    const auto it = std::lower_bound(roots_.begin(), roots_.end(), root);
    if (it == roots_.end() || *it != root) return std::nullopt;

    Location loc;
    loc.root = static_cast<std::uint32_t>(it - roots_.begin());
    for (int t = 1; t <= d; ++t) {
        std::int64_t digit = 0;
        for (int a = 0; a < n_; ++a) {
            digit |= ((finest[a] >> (d - t)) & 1) << a;
        }
        loc.path = (loc.path << n_) | digit;
    }
    return loc;
}

CubeId LatticeWindow::id_at_depth(const Location &loc, int d) const {
    const std::int64_t path = loc.path >> (static_cast<std::int64_t>(n_) * (depth() - d));
    return static_cast<CubeId>(loc.root * cubes_per_root_ + depth_offset_[d] +
                               static_cast<std::size_t>(path));
}

std::vector<CubeId> LatticeWindow::chain_ids(std::span<const double> x) const {
    const auto loc = locate(x);
    if (!loc) throw OutOfWindow("chain: point lies in no root of the window");
    std::vector<CubeId> out(static_cast<std::size_t>(depth()) + 1);
    for (int d = 0; d <= depth(); ++d) out[d] = id_at_depth(*loc, d);
    return out;
}

std::vector<DyadicCube> LatticeWindow::chain(std::span<const double> x) const {
    std::vector<DyadicCube> out;
    for (const CubeId id : chain_ids(x)) out.push_back(cube(id));
    return out;
}

bool LatticeWindow::operator==(const LatticeWindow &other) const {
    return n_ == other.n_ && shift_ == other.shift_ && level_min_ == other.level_min_ &&
           level_max_ == other.level_max_ && roots_ == other.roots_;
}

} // namespace wolff
