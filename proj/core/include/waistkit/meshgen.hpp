#pragma once

#include <functional>

#include "waistkit/mesh.hpp"

namespace waistkit {

// Synthetic meshes used by tests, benchmarks, and the CLI generators.
// All generators return finalized meshes.

TriMesh make_tetrahedron(double edge = 1.0);
TriMesh make_icosahedron(double radius = 1.0);
// Icosahedron subdivided `level` times, vertices projected to the sphere.
TriMesh make_icosphere(int level, double radius = 1.0);
// Icosphere mapped through (x,y,z) -> (ax, by, cz).
TriMesh make_ellipsoid(double a, double b, double c, int level);

// Unit-square flat torus on an n x n grid (n >= 3), diagonals along (+1,+1).
// The metric is the exact flat metric; the declared embedding is the
// isometric-up-to-discretization Clifford torus in R^4 (used only for the
// derivative term of the cycle-space distance).
TriMesh make_flat_torus(int n);

TriMesh make_torus_of_revolution(double R, double r, int nu, int nv);

// Planar disc of the given radius: `rings` concentric rings, `sectors`
// vertices per ring, fan at the center. Embedded in the z=0 plane.
TriMesh make_disc(double radius, int rings, int sectors);
// Planar annulus r0 < r < r1.
TriMesh make_annulus(double r0, double r1, int rings, int sectors);

// Closed surface of revolution about the x-axis: profile(u) is the radius
// at u in [0,1] (must be 0 at the ends, positive inside).
TriMesh make_surface_of_revolution(const std::function<double(double)>& profile, double length,
                                   int nu, int nv);

// Two bulbs joined by a thin neck (surface of revolution).
TriMesh make_dumbbell(int nu = 48, int nv = 32);

// Genus-2 surface: two flat tori with one face removed each, glued along
// the resulting triangular boundary. Intrinsic metric only (no embedding).
TriMesh make_genus2(int n);

}  // namespace waistkit
