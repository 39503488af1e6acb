#pragma once

#include <array>

#include "vennprob/common.hpp"
#include "vennprob/probmodel.hpp"

namespace vennprob {

// Three circles whose areas carry probability mass: pi * radius^2 = P(X).
struct CircleTriple {
    double radius_a = 0.0;
    double radius_b = 0.0;
    double radius_c = 0.0;
};

// A solved diagram: radii, the three center distances, and concrete planar
// centers (A at the origin, B on the positive x axis, C in the closed upper
// half-plane). The distances and the centers describe the same geometry;
// dist_ab/dist_bc/dist_ac drive the angle formulas, the centers drive the
// arc-polygon path.
struct TripleConfig {
    CircleTriple circles;
    double dist_ab = 0.0;
    double dist_bc = 0.0;
    double dist_ac = 0.0;
    std::array<Point, 3> centers{};
};

struct CentralAreaBreakdown {
    double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0;  // arc angles at A, B, C
    double seg1 = 0.0, seg2 = 0.0, seg3 = 0.0;        // arc-chord segment areas
    double chord_triangle = 0.0;                      // area of the chord polygon
    double total = 0.0;
    ConfigClass config_class = ConfigClass::Empty;
};

struct CentralAngles {
    double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0;
};

// radius of a disc whose area equals p
double radius_from_prob(double p);

// Intersection area of two discs at center distance d, with the disjoint and
// contained branches clamped analytically.
double lens_area(double r1, double r2, double d);

// Inverts lens_area in d by bisection over [|r1-r2|, r1+r2]; the map is
// strictly decreasing there. Stops when the area residual is <= tol or after
// 200 halvings. Endpoint targets (0 and the full small disc) return the
// bracket endpoints exactly.
double solve_center_distance(double r1, double r2, double target, double tol);

// Realizes three pairwise distances as planar points: A = (0,0), B = (r,0),
// C in the upper half-plane with |AC| = s and |BC| = t. The reflected
// placement is congruent and produces identical areas.
std::array<Point, 3> place_centers(double r, double s, double t);

// The three central angles of the curvilinear triangle, one per circle,
// each an (arccos + arccos - arccos) combination of the law of cosines.
// Arguments within 1e-12 of [-1, 1] are clamped; anything further is a
// domain error rather than a silent clamp. A nonpositive angle signals a
// configuration the three-arc formulas do not cover.
CentralAngles central_angles(double a, double b, double c, double r, double s, double t);

// Area between a chord and its arc: (theta/2) r^2 - r^2 sin(theta/2) cos(theta/2).
double segment_area(double theta, double radius);

// Heron's formula on the three chords 2a sin(theta1/2), 2b sin(theta2/2),
// 2c sin(theta3/2). A zero chord collapses the triangle to area 0.
double chord_triangle_area(double theta1, double theta2, double theta3,
                           double a, double b, double c);

// Convenience constructor: validates inputs and places the centers.
TripleConfig make_config(double a, double b, double c, double r, double s, double t);

// The three-arc fast path: central_angles + three segments + chord triangle.
// Throws NotGenericConfiguration (carrying the detected class) on anything
// that is not a curvilinear triangle.
CentralAreaBreakdown central_area_generic(const TripleConfig& config);

// Authoritative triple-intersection area with full case coverage. Generic
// configurations are measured through an independent route (pairwise
// intersection points kept inside the third disc, assembled into a
// circular-arc polygon: shoelace area plus segment corrections) so the two
// paths cross-check each other.
CentralAreaBreakdown triple_intersection_area(const TripleConfig& config);

// Solves the whole diagram from feasible marginals: radii from the single
// probabilities, center distances by bisection on the pairwise ones.
TripleConfig build_config(const TripleMarginals& m, double tol = 1e-12);

// True when the stored centers reproduce dist_ab/dist_bc/dist_ac within tol.
bool config_is_consistent(const TripleConfig& config, double tol = 1e-9);

}  // namespace vennprob
