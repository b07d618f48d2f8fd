#include "osc/marching.hpp"

#include <cmath>

namespace osc {

namespace {

struct Pt {
    double x, y;
};

// crossing on the edge from (x0,y0,v0) to (x1,y1,v1), v values relative to the level
Pt cross(double x0, double y0, double v0, double x1, double y1, double v1) {
    double t = v0 / (v0 - v1);
    return {x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
}

}  // namespace

void for_each_contour_segment(
    const GridPhase2D& g, double s,
    const std::function<void(double, double, double)>& segment) {
    auto emit = [&](const Pt& a, const Pt& b) {
        double len = std::hypot(b.x - a.x, b.y - a.y);
        if (len > 0.0) segment(0.5 * (a.x + b.x), 0.5 * (a.y + b.y), len);
    };
    for (int j = 0; j + 1 < g.ny; ++j) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            double xa = g.x_at(i), xb = g.x_at(i + 1);
            double ya = g.y_at(j), yb = g.y_at(j + 1);
            double v00 = g.f[g.idx(i, j)] - s;
            double v10 = g.f[g.idx(i + 1, j)] - s;
            double v01 = g.f[g.idx(i, j + 1)] - s;
            double v11 = g.f[g.idx(i + 1, j + 1)] - s;
            int mask = (v00 < 0 ? 1 : 0) | (v10 < 0 ? 2 : 0) |
                       (v11 < 0 ? 4 : 0) | (v01 < 0 ? 8 : 0);
            if (mask == 0 || mask == 15) continue;
            // edge crossings: bottom, right, top, left
            Pt pb, pr, pt, pl;
            bool eb = (v00 < 0) != (v10 < 0);
            bool er = (v10 < 0) != (v11 < 0);
            bool et = (v11 < 0) != (v01 < 0);
            bool el = (v01 < 0) != (v00 < 0);
            if (eb) pb = cross(xa, ya, v00, xb, ya, v10);
            if (er) pr = cross(xb, ya, v10, xb, yb, v11);
            if (et) pt = cross(xb, yb, v11, xa, yb, v01);
            if (el) pl = cross(xa, yb, v01, xa, ya, v00);
            switch (mask) {
                case 1: case 14: emit(pl, pb); break;
                case 2: case 13: emit(pb, pr); break;
                case 3: case 12: emit(pl, pr); break;
                case 4: case 11: emit(pr, pt); break;
                case 6: case 9:  emit(pb, pt); break;
                case 7: case 8:  emit(pt, pl); break;
                case 5: case 10: {
                    // saddle: pick the pairing consistent with the center value
                    double vc = 0.25 * (v00 + v10 + v01 + v11);
                    bool center_in = vc < 0;
                    bool corner00_in = mask == 5;  // corners 00 and 11 inside
                    if (center_in == corner00_in) {
                        emit(pl, pt);
                        emit(pb, pr);
                    } else {
                        emit(pl, pb);
                        emit(pr, pt);
                    }
                    break;
                }
                default: break;
            }
        }
    }
}

double contour_integral(const GridPhase2D& g, double s,
                        const std::function<double(double, double)>& phi) {
    double acc = 0.0;
    for_each_contour_segment(g, s, [&](double x, double y, double len) {
        acc += len * phi(x, y);
    });
    return acc;
}

double contour_length(const GridPhase2D& g, double s) {
    double acc = 0.0;
    for_each_contour_segment(g, s, [&](double, double, double len) { acc += len; });
    return acc;
}

}  // namespace osc
