#include "vennprob/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace vennprob {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kArgSlack = 1e-12;  // roundoff allowance on arccos arguments

double point_dist(const Point& p, const Point& q) {
    return std::hypot(p.x - q.x, p.y - q.y);
}

void require_finite_nonneg(double x, const char* what) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error(std::string(what) + " must be a finite nonnegative number");
}

// Clamps arguments within kArgSlack of [-1, 1]; larger excursions mean the
// geometry itself is inconsistent, not roundoff, so they throw.
double acos_guarded(double x) {
    if (!(x >= -1.0 - kArgSlack && x <= 1.0 + kArgSlack))
        throw std::domain_error("arccos argument outside [-1, 1]: " + std::to_string(x));
    return std::acos(std::clamp(x, -1.0, 1.0));
}

}  // namespace

double radius_from_prob(double p) {
    require_finite_nonneg(p, "probability");
    return std::sqrt(p / kPi);
}

double lens_area(double r1, double r2, double d) {
    require_finite_nonneg(r1, "radius");
    require_finite_nonneg(r2, "radius");
    require_finite_nonneg(d, "distance");
    if (d >= r1 + r2) return 0.0;
    const double rmin = std::min(r1, r2);
    if (d <= std::abs(r1 - r2)) return kPi * rmin * rmin;

    const double d2 = d * d;
    const double alpha = acos_guarded((d2 + r1 * r1 - r2 * r2) / (2.0 * d * r1));
    const double beta = acos_guarded((d2 + r2 * r2 - r1 * r1) / (2.0 * d * r2));
    double k = (r1 + r2 + d) * (r1 + r2 - d) * (r1 + d - r2) * (r2 + d - r1);
    if (k < 0.0) k = 0.0;
    return r1 * r1 * alpha + r2 * r2 * beta - 0.5 * std::sqrt(k);
}

double solve_center_distance(double r1, double r2, double target, double tol) {
    require_finite_nonneg(r1, "radius");
    require_finite_nonneg(r2, "radius");
    if (!(tol > 0.0)) throw std::domain_error("solve_center_distance: tol must be > 0");
    if (!std::isfinite(target)) throw std::domain_error("solve_center_distance: target not finite");

    const double rmin = std::min(r1, r2);
    const double max_lens = kPi * rmin * rmin;
    const double slack = kArgSlack * std::max(1.0, max_lens);
    if (target > max_lens + slack)
        throw InfeasibleLens("target lens area " + std::to_string(target) +
                             " exceeds maximum " + std::to_string(max_lens));
    if (target < -slack) throw std::domain_error("solve_center_distance: negative target");

    const double lo = std::abs(r1 - r2);
    const double hi = r1 + r2;
    if (target <= 0.0) return hi;
    // Snap to the containment endpoint through the rounding of pi*r^2, so a
    // pairwise probability equal to min(P) yields the nested placement exactly.
    if (target >= max_lens - 4e-16 * max_lens) return lo;

    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double val = lens_area(r1, r2, mid);
        if (std::abs(val - target) <= tol) return mid;
        if (val > target)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

std::array<Point, 3> place_centers(double r, double s, double t) {
    require_finite_nonneg(r, "distance");
    require_finite_nonneg(s, "distance");
    require_finite_nonneg(t, "distance");
    const double slack = 1e-12;
    if (r > s + t + slack || s > r + t + slack || t > r + s + slack)
        throw ConfigurationInfeasible(
            "center distances violate the triangle inequality: r=" + std::to_string(r) +
                " s=" + std::to_string(s) + " t=" + std::to_string(t),
            r, s, t);
    if (r <= 0.0) return {Point{0.0, 0.0}, Point{0.0, 0.0}, Point{s, 0.0}};
    const double cx = (r * r + s * s - t * t) / (2.0 * r);
    double cy2 = s * s - cx * cx;
    if (cy2 < 0.0) cy2 = 0.0;
    return {Point{0.0, 0.0}, Point{r, 0.0}, Point{cx, std::sqrt(cy2)}};
}

CentralAngles central_angles(double a, double b, double c, double r, double s, double t) {
    if (!(r > 0.0 && s > 0.0 && t > 0.0))
        throw DegenerateDistance("central_angles: center distances must be positive");
    CentralAngles th;
    th.theta1 = acos_guarded((a * a + s * s - c * c) / (2.0 * a * s)) +
                acos_guarded((a * a + r * r - b * b) / (2.0 * a * r)) -
                acos_guarded((r * r + s * s - t * t) / (2.0 * r * s));
    th.theta2 = acos_guarded((b * b + t * t - c * c) / (2.0 * b * t)) +
                acos_guarded((b * b + r * r - a * a) / (2.0 * b * r)) -
                acos_guarded((r * r + t * t - s * s) / (2.0 * r * t));
    th.theta3 = acos_guarded((c * c + s * s - a * a) / (2.0 * c * s)) +
                acos_guarded((c * c + t * t - b * b) / (2.0 * c * t)) -
                acos_guarded((t * t + s * s - r * r) / (2.0 * t * s));
    return th;
}

double segment_area(double theta, double radius) {
    require_finite_nonneg(radius, "radius");
    if (!(theta >= -kArgSlack && theta <= 2.0 * kPi + kArgSlack))
        throw std::domain_error("segment_area: angle outside [0, 2*pi]");
    theta = std::clamp(theta, 0.0, 2.0 * kPi);
    const double r2 = radius * radius;
    return 0.5 * theta * r2 - r2 * std::sin(0.5 * theta) * std::cos(0.5 * theta);
}

double chord_triangle_area(double theta1, double theta2, double theta3,
                           double a, double b, double c) {
    const double x = 2.0 * a * std::sin(0.5 * theta1);
    const double y = 2.0 * b * std::sin(0.5 * theta2);
    const double z = 2.0 * c * std::sin(0.5 * theta3);
    if (x <= 0.0 || y <= 0.0 || z <= 0.0) return 0.0;  // collapsed chord
    const double p = x + y + z;
    const double f1 = p - 2.0 * x, f2 = p - 2.0 * y, f3 = p - 2.0 * z;
    const double slack = kArgSlack * p;
    if (f1 < -slack || f2 < -slack || f3 < -slack)
        throw ConfigurationInfeasible("chord lengths violate the triangle inequality", x, y, z);
    const double prod = p * std::max(f1, 0.0) * std::max(f2, 0.0) * std::max(f3, 0.0);
    return 0.25 * std::sqrt(prod);
}

TripleConfig make_config(double a, double b, double c, double r, double s, double t) {
    require_finite_nonneg(a, "radius");
    require_finite_nonneg(b, "radius");
    require_finite_nonneg(c, "radius");
    TripleConfig config;
    config.circles = {a, b, c};
    config.dist_ab = r;
    config.dist_ac = s;
    config.dist_bc = t;
    config.centers = place_centers(r, s, t);
    return config;
}

bool config_is_consistent(const TripleConfig& config, double tol) {
    const auto& ctr = config.centers;
    return std::abs(point_dist(ctr[0], ctr[1]) - config.dist_ab) <= tol &&
           std::abs(point_dist(ctr[0], ctr[2]) - config.dist_ac) <= tol &&
           std::abs(point_dist(ctr[1], ctr[2]) - config.dist_bc) <= tol;
}

// ---------------------------------------------------------------------------
// Case analysis shared by the robust path and the three-arc fast path.
// ---------------------------------------------------------------------------

namespace {

// pair ids: 0 = (A,B), 1 = (A,C), 2 = (B,C)
constexpr int kPairFirst[3] = {0, 0, 1};
constexpr int kPairSecond[3] = {1, 2, 2};
constexpr int kPairThird[3] = {2, 1, 0};

struct RegionVertex {
    Point p;
    int pair;
};

// Both crossing points of two properly intersecting circles.
std::array<Point, 2> circle_crossings(const Point& c1, double r1, const Point& c2, double r2,
                                      double d) {
    const double along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    double h2 = r1 * r1 - along * along;
    if (h2 < 0.0) h2 = 0.0;
    const double h = std::sqrt(h2);
    const double ux = (c2.x - c1.x) / d, uy = (c2.y - c1.y) / d;
    const Point base{c1.x + along * ux, c1.y + along * uy};
    return {Point{base.x - h * uy, base.y + h * ux}, Point{base.x + h * uy, base.y - h * ux}};
}

struct Analysis {
    ConfigClass cls = ConfigClass::Empty;
    bool resolved = false;   // true when total is already known analytically
    double total = 0.0;
    std::vector<RegionVertex> verts;  // raw vertex list for arc assembly
};

Analysis analyze(const TripleConfig& config) {
    const std::array<double, 3> rad = {config.circles.radius_a, config.circles.radius_b,
                                       config.circles.radius_c};
    for (double r : rad) require_finite_nonneg(r, "radius");
    const auto& ctr = config.centers;

    Analysis an;
    const double rmin = std::min({rad[0], rad[1], rad[2]});
    const double rmax = std::max({rad[0], rad[1], rad[2]});
    const double scale = std::max(rmax, 1e-300);
    const double eps = 1e-12 * scale;
    const double eps_in = 1e-9 * scale;

    if (rmin <= 0.0) {
        an.cls = ConfigClass::Degenerate;
        an.resolved = true;
        return an;
    }

    double d[3];
    for (int q = 0; q < 3; ++q)
        d[q] = point_dist(ctr[kPairFirst[q]], ctr[kPairSecond[q]]);

    if (d[0] <= eps && d[1] <= eps && d[2] <= eps) {
        an.cls = ConfigClass::Degenerate;
        an.total = kPi * rmin * rmin;
        an.resolved = true;
        return an;
    }

    for (int q = 0; q < 3; ++q) {
        if (d[q] >= rad[kPairFirst[q]] + rad[kPairSecond[q]] - eps) {
            an.cls = ConfigClass::Empty;  // touching contributes no area
            an.resolved = true;
            return an;
        }
    }

    for (int q = 0; q < 3; ++q) {
        const int i = kPairFirst[q], j = kPairSecond[q], k = kPairThird[q];
        if (d[q] <= std::abs(rad[i] - rad[j]) + eps) continue;  // nested pair, no crossings
        for (const Point& p : circle_crossings(ctr[i], rad[i], ctr[j], rad[j], d[q]))
            if (point_dist(p, ctr[k]) <= rad[k] + eps_in) an.verts.push_back({p, q});
    }

    if (an.verts.empty()) {
        // No boundary vertices: the region is the smallest disc or nothing.
        int m = 0;
        if (rad[1] < rad[m]) m = 1;
        if (rad[2] < rad[m]) m = 2;
        bool inside_both = true;
        for (int o = 0; o < 3; ++o) {
            if (o == m) continue;
            if (point_dist(ctr[m], ctr[o]) > rad[o] - rad[m] + eps) inside_both = false;
        }
        an.cls = inside_both ? ConfigClass::Contained : ConfigClass::Empty;
        an.total = inside_both ? kPi * rad[m] * rad[m] : 0.0;
        an.resolved = true;
        return an;
    }

    // Cluster coincident vertices (three circles through one point) before
    // deciding the class; the raw list is still what gets assembled.
    std::vector<RegionVertex> unique;
    for (const auto& v : an.verts) {
        bool dup = false;
        for (const auto& u : unique)
            if (point_dist(v.p, u.p) <= eps_in) dup = true;
        if (!dup) unique.push_back(v);
    }

    if (unique.size() == 1) {
        an.cls = ConfigClass::Empty;  // single-point contact
        an.resolved = true;
        an.verts.clear();
        return an;
    }
    if (unique.size() == 2) {
        an.cls = ConfigClass::PairwiseLens;
        if (unique[0].pair == unique[1].pair) {
            const int q = unique[0].pair;
            an.total = lens_area(rad[kPairFirst[q]], rad[kPairSecond[q]], d[q]);
            an.resolved = true;
            an.verts.clear();
        }
        return an;  // mismatched pairs fall through to arc assembly
    }
    if (unique.size() == 3) {
        bool seen[3] = {false, false, false};
        for (const auto& v : unique) seen[v.pair] = true;
        an.cls = (seen[0] && seen[1] && seen[2]) ? ConfigClass::Generic : ConfigClass::MultiArc;
    } else {
        an.cls = ConfigClass::MultiArc;
    }
    return an;
}

// Circular-arc polygon measure: order the vertices counterclockwise, take the
// shoelace area of the chord polygon, and add one outward segment per
// boundary arc. Fills the per-circle arc angles and segment areas.
void assemble_arc_polygon(const TripleConfig& config, std::vector<RegionVertex> verts,
                          CentralAreaBreakdown& out) {
    const std::array<double, 3> rad = {config.circles.radius_a, config.circles.radius_b,
                                       config.circles.radius_c};
    const auto& ctr = config.centers;
    const double scale = std::max({rad[0], rad[1], rad[2], 1e-300});
    const double eps_on = 1e-7 * scale;

    Point cen{0.0, 0.0};
    for (const auto& v : verts) {
        cen.x += v.p.x;
        cen.y += v.p.y;
    }
    cen.x /= static_cast<double>(verts.size());
    cen.y /= static_cast<double>(verts.size());
    std::sort(verts.begin(), verts.end(), [&](const RegionVertex& l, const RegionVertex& r) {
        return std::atan2(l.p.y - cen.y, l.p.x - cen.x) <
               std::atan2(r.p.y - cen.y, r.p.x - cen.x);
    });

    const std::size_t n = verts.size();
    double poly = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const Point& v = verts[k].p;
        const Point& w = verts[(k + 1) % n].p;
        poly += v.x * w.y - w.x * v.y;
    }
    poly *= 0.5;

    double theta[3] = {0.0, 0.0, 0.0};
    double seg[3] = {0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        const Point& v = verts[k].p;
        const Point& w = verts[(k + 1) % n].p;
        if (point_dist(v, w) <= 1e-14 * scale) continue;

        // The boundary arc between consecutive vertices belongs to the circle
        // through both whose counterclockwise arc midpoint stays inside all
        // three discs; pick the candidate with the largest margin.
        int best = -1;
        double best_margin = -1e300, best_span = 0.0;
        for (int c = 0; c < 3; ++c) {
            if (std::abs(point_dist(v, ctr[c]) - rad[c]) > eps_on) continue;
            if (std::abs(point_dist(w, ctr[c]) - rad[c]) > eps_on) continue;
            const double av = std::atan2(v.y - ctr[c].y, v.x - ctr[c].x);
            const double aw = std::atan2(w.y - ctr[c].y, w.x - ctr[c].x);
            double span = aw - av;
            while (span < 0.0) span += 2.0 * kPi;
            const double am = av + 0.5 * span;
            const Point mid{ctr[c].x + rad[c] * std::cos(am), ctr[c].y + rad[c] * std::sin(am)};
            double margin = 1e300;
            for (int j = 0; j < 3; ++j)
                margin = std::min(margin, rad[j] - point_dist(mid, ctr[j]));
            if (margin > best_margin) {
                best_margin = margin;
                best = c;
                best_span = span;
            }
        }
        if (best < 0) continue;  // knife-edge vertex pair; chord already counted
        theta[best] += best_span;
        seg[best] += 0.5 * rad[best] * rad[best] * (best_span - std::sin(best_span));
    }

    out.theta1 = theta[0];
    out.theta2 = theta[1];
    out.theta3 = theta[2];
    out.seg1 = seg[0];
    out.seg2 = seg[1];
    out.seg3 = seg[2];
    out.chord_triangle = poly;
    out.total = poly + seg[0] + seg[1] + seg[2];
}

}  // namespace

CentralAreaBreakdown central_area_generic(const TripleConfig& config) {
    Analysis an = analyze(config);
    if (an.cls != ConfigClass::Generic)
        throw NotGenericConfiguration(
            std::string("configuration is not a curvilinear triangle (") + to_string(an.cls) + ")",
            an.cls);

    const double a = config.circles.radius_a;
    const double b = config.circles.radius_b;
    const double c = config.circles.radius_c;
    const CentralAngles th =
        central_angles(a, b, c, config.dist_ab, config.dist_ac, config.dist_bc);
    if (th.theta1 <= 0.0 || th.theta2 <= 0.0 || th.theta3 <= 0.0)
        throw NotGenericConfiguration("nonpositive central angle", ConfigClass::Empty);

    CentralAreaBreakdown out;
    out.config_class = ConfigClass::Generic;
    out.theta1 = th.theta1;
    out.theta2 = th.theta2;
    out.theta3 = th.theta3;
    out.seg1 = segment_area(th.theta1, a);
    out.seg2 = segment_area(th.theta2, b);
    out.seg3 = segment_area(th.theta3, c);
    out.chord_triangle = chord_triangle_area(th.theta1, th.theta2, th.theta3, a, b, c);
    out.total = out.seg1 + out.seg2 + out.seg3 + out.chord_triangle;
    return out;
}

CentralAreaBreakdown triple_intersection_area(const TripleConfig& config) {
    Analysis an = analyze(config);
    CentralAreaBreakdown out;
    out.config_class = an.cls;
    if (an.resolved) {
        out.total = an.total;
        return out;
    }
    assemble_arc_polygon(config, std::move(an.verts), out);
    return out;
}

TripleConfig build_config(const TripleMarginals& m, double tol) {
    const double a = radius_from_prob(m.pA);
    const double b = radius_from_prob(m.pB);
    const double c = radius_from_prob(m.pC);
    const double r = solve_center_distance(a, b, m.pAB, tol);
    const double t = solve_center_distance(b, c, m.pBC, tol);
    const double s = solve_center_distance(a, c, m.pAC, tol);
    return make_config(a, b, c, r, s, t);
}

}  // namespace vennprob
