#include "prolate/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace prolate {

const std::vector<double>& SpectralLattice::column(int m) const {
    auto it = columns.find(m);
    if (it == columns.end())
        throw PreconditionError("column |m| out of range: " +
                                std::to_string(m));
    return it->second;
}

SpectralLattice build_lattice(const JointSpectrum& spectrum) {
    if (spectrum.n < 4)
        throw PreconditionError(
            "lattice transport needs n >= 4 (no room for a closed loop)");
    double gap_sum = 0.0;
    long gap_count = 0;
    for (const auto& [m, col] : spectrum.columns) {
        for (std::size_t i = 0; i + 1 < col.size(); ++i) {
            gap_sum += col[i + 1] - col[i];
            ++gap_count;
        }
    }
    if (gap_count == 0)
        throw PreconditionError("spectrum has no multi-point columns");
    double scaling = gap_sum / static_cast<double>(gap_count);
    if (!(scaling > 0.0) || !std::isfinite(scaling))
        throw NumericalError("degenerate lattice spacing");
    return SpectralLattice{spectrum.n, spectrum.columns, scaling};
}

namespace {

// Largest anchor index whose whole cell lies strictly below g_center,
// or -1 if the column has none.
int bottom_anchor(const std::vector<double>& col, double g_center) {
    int best = -1;
    for (std::size_t k = 0; k + 1 < col.size(); ++k)
        if (col[k + 1] < g_center) best = static_cast<int>(k);
    return best;
}

// Lowest point strictly above g_center, or -1.
int point_above(const std::vector<double>& col, double g_center) {
    for (std::size_t k = 0; k < col.size(); ++k)
        if (col[k] > g_center) return static_cast<int>(k);
    return -1;
}

bool column_feasible(const SpectralLattice& lat, int m, double g_center) {
    auto it = lat.columns.find(m);
    if (it == lat.columns.end() || it->second.size() < 2) return false;
    return bottom_anchor(it->second, g_center) >= 0 &&
           point_above(it->second, g_center) >= 0;
}

enum class Bias { none, down, up };

// Nearest point of a column to the target height.  A clear winner is
// required: when the runner-up is within 10% of the winner's distance the
// match is a coin toss, which only a directional bias may settle (used for
// the first step of a leg, where half-row shear between columns is common).
// guard rejects matches farther than the local row spacing allows.  Targets
// beyond a column's end get no special treatment: a leg that extrapolates
// past the lattice boundary has hit the fold where rows terminate, and
// snapping to the end point there shifts the path by a whole row without
// any record of it, so such a step must fail instead.
int snap_point(const std::vector<double>& col, double target, double guard,
               Bias bias) {
    int best = -1, second = -1;
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = d1;
    for (std::size_t k = 0; k < col.size(); ++k) {
        double d = std::fabs(col[k] - target);
        if (d < d1) {
            d2 = d1;
            second = best;
            d1 = d;
            best = static_cast<int>(k);
        } else if (d < d2) {
            d2 = d;
            second = static_cast<int>(k);
        }
    }
    if (best < 0) throw NumericalError("snap target column is empty");
    if (d2 < 1.1 * d1 && d1 > 0.0) {
        if (bias == Bias::none)
            throw NumericalError("ambiguous lattice snap (cell degenerated)");
        bool best_lower = col[best] < col[second];
        if ((bias == Bias::down) != best_lower) best = second;
    }
    if (std::fabs(col[best] - target) > guard)
        throw NumericalError("lattice snap too far from prediction");
    return best;
}

class Transporter {
  public:
    Transporter(const SpectralLattice& lat, const LoopSpec& loop)
        : lat_(lat), loop_(loop) {}

    MonodromyResult run() {
        start();
        int w = loop_.width;
        int dir = loop_.clockwise ? -1 : 1;
        horizontal(dir, w, /*below=*/true);
        vertical_to(loop_.g_top, /*upward=*/true);
        horizontal(-dir, 2 * w, /*below=*/false);
        vertical_to(loop_.g_bottom, /*upward=*/false);
        horizontal(dir, w, /*below=*/true);
        close_up();
        return finish();
    }

  private:
    const SpectralLattice& lat_;
    LoopSpec loop_;
    int m_ = 0, k_ = 0;  // anchor
    int u_k_ = 0;        // matched point in column m_ + 1
    int first_k_ = 0, first_u_k_ = 0;
    std::vector<TraceCell> trace_;

    const std::vector<double>& col(int m) const { return lat_.column(m); }
    double g(int m, int k) const { return col(m)[k]; }
    double anchor_g() const { return g(m_, k_); }
    double u_gap() const { return g(m_ + 1, u_k_) - anchor_g(); }

    // Matches farther than the local row spacing mean a basis vector jumped
    // rows, which would silently shift the transported frame.
    double guard() const {
        const auto& c = col(m_);
        double h = 0.0;
        if (k_ + 1 < static_cast<int>(c.size())) h = c[k_ + 1] - c[k_];
        if (k_ > 0) h = std::max(h, c[k_] - c[k_ - 1]);
        return 0.6 * h;
    }

    int companion_k() const {
        return k_ + 1 < static_cast<int>(col(m_).size()) ? k_ + 1 : k_ - 1;
    }

    void record() {
        int vk = companion_k();
        trace_.push_back(
            {m_, k_, anchor_g(), u_k_, g(m_ + 1, u_k_), vk, g(m_, vk)});
    }

    // Move the anchor, then re-match u by translating its previous extent.
    void move_anchor(int new_m, int new_k) {
        double ug = u_gap();
        m_ = new_m;
        k_ = new_k;
        u_k_ = snap_point(col(m_ + 1), anchor_g() + ug, guard(), Bias::none);
        record();
    }

    void verify_side(bool below) {
        bool ok = below ? (anchor_g() < loop_.center_g)
                        : (anchor_g() > loop_.center_g);
        if (!ok)
            throw NumericalError(
                "loop leg crossed the center height (winding lost)");
    }

    void start() {
        int k0 = bottom_anchor(col(loop_.m_center), loop_.center_g);
        if (k0 < 0)
            throw NumericalError("no starting cell below the loop center");
        m_ = loop_.m_center;
        k_ = k0;
        // The companion pairs with the anchor cell, not the anchor point:
        // matching the cell midpoint keeps the pairing on the same row when
        // the adjacent column is sheared by half a cell, and it keeps the
        // companion off the column end when the anchor hugs the lattice edge.
        const double cell_mid = 0.5 * (g(m_, k_) + g(m_, k_ + 1));
        u_k_ = snap_point(col(m_ + 1), cell_mid,
                          std::numeric_limits<double>::infinity(), Bias::down);
        first_k_ = k_;
        first_u_k_ = u_k_;
        record();
    }

    // A horizontal leg: the first step aims at the current height (biased
    // away from the center when the match is ambiguous), later steps aim at
    // the linear extrapolation of the leg's own anchor heights.
    void horizontal(int dir, int steps, bool below) {
        double prev = anchor_g();
        for (int i = 0; i < steps; ++i) {
            double cur = anchor_g();
            double target = i == 0 ? cur : 2.0 * cur - prev;
            Bias bias =
                i == 0 ? (below ? Bias::down : Bias::up) : Bias::none;
            int nk = snap_point(col(m_ + dir), target, guard(), bias);
            move_anchor(m_ + dir, nk);
            verify_side(below);
            prev = cur;
        }
    }

    void vertical_to(double g_limit, bool upward) {
        const int cap = 8 * lat_.n;
        int taken = 0;
        while (upward ? anchor_g() < g_limit : anchor_g() > g_limit) {
            if (upward && k_ + 1 >= static_cast<int>(col(m_).size())) break;
            if (!upward && k_ == 0) break;
            move_anchor(m_, upward ? k_ + 1 : k_ - 1);
            if (++taken > cap)
                throw NumericalError("vertical leg failed to terminate");
        }
        verify_side(!upward);
    }

    void close_up() {
        const int cap = 8 * lat_.n;
        int taken = 0;
        while (k_ != first_k_) {
            move_anchor(m_, k_ < first_k_ ? k_ + 1 : k_ - 1);
            verify_side(true);
            if (++taken > cap)
                throw NumericalError("closing leg failed to terminate");
        }
    }

    MonodromyResult finish() {
        if (m_ != loop_.m_center || k_ != first_k_)
            throw NumericalError("transport loop did not close");
        if (k_ + 1 >= static_cast<int>(col(m_).size()))
            throw NumericalError("start cell lost its upper neighbor");
        // Row indices are global within a column, so the in-column basis
        // vector returns to itself; the matched cross-column vector comes
        // back shifted by du rows.  Integer index bookkeeping makes the
        // change of basis exact.
        int du = (u_k_ - k_) - (first_u_k_ - first_k_);
        MonodromyMatrix m{1, 0, du, 1};
        return MonodromyResult{m, loop_, std::move(trace_)};
    }
};

LoopSpec make_loop(const SpectralLattice& lattice, int m_center, int width,
                   double center_lz, double center_g, bool clockwise) {
    double g_bottom = std::numeric_limits<double>::infinity();
    double g_top = -g_bottom;
    for (int m = m_center - width; m <= m_center + width; ++m) {
        const auto& col = lattice.column(m);
        g_bottom = std::min(g_bottom, col[bottom_anchor(col, center_g)]);
        g_top = std::max(g_top, col[point_above(col, center_g)]);
    }
    return LoopSpec{m_center, width,    center_lz,
                    center_g, g_bottom, g_top,     clockwise};
}

}  // namespace

LoopSpec default_loop(const SpectralLattice& lattice, double center_lz,
                      double center_g, int width_override) {
    if (!std::isfinite(center_lz) || !std::isfinite(center_g))
        throw PreconditionError("loop center must be finite");
    int m_center = static_cast<int>(std::lround(center_lz));
    if (std::abs(m_center) > lattice.n - 3)
        throw PreconditionError("loop center too close to the lattice edge");
    if (!column_feasible(lattice, m_center, center_g))
        throw NumericalError("no feasible loop around the requested center");

    // Symmetric feasible radius of anchor columns around the center; the u
    // match reaches one column further, so anchors stop at |m| = n - 2.
    int r = 0;
    while (std::abs(m_center) + r + 2 <= lattice.n - 1 &&
           column_feasible(lattice, m_center + r + 1, center_g) &&
           column_feasible(lattice, m_center - r - 1, center_g))
        ++r;
    int w_max = r;
    if (width_override > 0) {
        if (width_override > w_max)
            throw PreconditionError("requested loop width is infeasible");
        w_max = width_override;
    }
    if (w_max < 1)
        throw NumericalError("no feasible loop around the requested center");

    // Widest circuit that actually transports: snapping can still fail close
    // to the lattice boundary, so candidates are tried in decreasing order.
    for (int w = w_max; w >= 1; --w) {
        LoopSpec spec =
            make_loop(lattice, m_center, w, center_lz, center_g, false);
        try {
            Transporter(lattice, spec).run();
            return spec;
        } catch (const NumericalError&) {
            if (w == 1 || w == width_override) throw;
        }
    }
    throw NumericalError("no feasible loop around the requested center");
}

MonodromyResult transport_cell(const SpectralLattice& lattice,
                               const LoopSpec& loop) {
    if (loop.width < 1) throw PreconditionError("loop width must be >= 1");
    if (std::abs(loop.m_center) + loop.width + 1 > lattice.n - 1)
        throw PreconditionError("loop extends past usable columns");
    if (!(loop.g_bottom < loop.center_g && loop.center_g < loop.g_top))
        throw PreconditionError("loop heights must straddle the center");
    return Transporter(lattice, loop).run();
}

}  // namespace prolate
