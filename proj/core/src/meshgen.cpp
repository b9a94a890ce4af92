#include "waistkit/meshgen.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace waistkit {

namespace {

constexpr double kPi = std::numbers::pi;

VecN v3(double x, double y, double z) {
  VecN p;
  p.c = {x, y, z, 0.0};
  p.dim = 3;
  return p;
}

}  // namespace

TriMesh make_tetrahedron(double edge) {
  TriMesh m;
  const double s = edge / (2.0 * std::sqrt(2.0));
  m.add_vertex(v3(s, s, s));
  m.add_vertex(v3(s, -s, -s));
  m.add_vertex(v3(-s, s, -s));
  m.add_vertex(v3(-s, -s, s));
  m.add_face(0, 1, 2);
  m.add_face(0, 3, 1);
  m.add_face(0, 2, 3);
  m.add_face(1, 3, 2);
  m.finalize();
  return m;
}

TriMesh make_icosahedron(double radius) {
  TriMesh m;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double n = std::sqrt(1.0 + phi * phi);
  const double a = radius / n, b = radius * phi / n;
  const double V[12][3] = {{-a, b, 0}, {a, b, 0},  {-a, -b, 0}, {a, -b, 0}, {0, -a, b}, {0, a, b},
                           {0, -a, -b}, {0, a, -b}, {b, 0, -a},  {b, 0, a},  {-b, 0, -a}, {-b, 0, a}};
  for (auto& p : V) m.add_vertex(v3(p[0], p[1], p[2]));
  const int F[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (auto& f : F) m.add_face(f[0], f[1], f[2]);
  m.finalize();
  return m;
}

namespace {

struct SubdivisionBuilder {
  std::vector<VecN> verts;
  std::vector<std::array<int, 3>> faces;
  std::map<std::pair<int, int>, int> midpoint;
  double radius;

  int mid(int a, int b) {
    auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    VecN p = (verts[a] + verts[b]) * 0.5;
    const double s = radius / p.norm();
    p = p * s;
    verts.push_back(p);
    const int id = static_cast<int>(verts.size()) - 1;
    midpoint[key] = id;
    return id;
  }
};

}  // namespace

TriMesh make_icosphere(int level, double radius) {
  TriMesh ico = make_icosahedron(radius);
  SubdivisionBuilder B;
  B.radius = radius;
  for (int v = 0; v < ico.n_vertices(); v++) B.verts.push_back(ico.position(v));
  for (int f = 0; f < ico.n_faces_total(); f++) {
    const auto& F = ico.face(f);
    B.faces.push_back(F.v);
  }
  for (int it = 0; it < level; it++) {
    std::vector<std::array<int, 3>> next;
    next.reserve(B.faces.size() * 4);
    for (const auto& f : B.faces) {
      const int a = B.mid(f[0], f[1]);
      const int b = B.mid(f[1], f[2]);
      const int c = B.mid(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    B.faces = std::move(next);
    B.midpoint.clear();
  }
  TriMesh m;
  for (const VecN& p : B.verts) m.add_vertex(p);
  for (const auto& f : B.faces) m.add_face(f[0], f[1], f[2]);
  m.finalize();
  return m;
}

TriMesh make_ellipsoid(double a, double b, double c, int level) {
  TriMesh sphere = make_icosphere(level, 1.0);
  TriMesh m;
  for (int v = 0; v < sphere.n_vertices(); v++) {
    const VecN& p = sphere.position(v);
    m.add_vertex(v3(a * p[0], b * p[1], c * p[2]));
  }
  for (int f = 0; f < sphere.n_faces_total(); f++) {
    const auto& F = sphere.face(f);
    m.add_face(F.v[0], F.v[1], F.v[2]);
  }
  m.finalize();
  return m;
}

TriMesh make_flat_torus(int n) {
  if (n < 3) throw MeshError("flat torus needs n >= 3");
  TriMesh m;
  const double h = 1.0 / n;
  const double r = 1.0 / (2.0 * kPi);
  for (int j = 0; j < n; j++) {
    for (int i = 0; i < n; i++) {
      const double x = i * h, y = j * h;
      VecN p;
      p.c = {r * std::cos(2 * kPi * x), r * std::sin(2 * kPi * x), r * std::cos(2 * kPi * y),
             r * std::sin(2 * kPi * y)};
      p.dim = 4;
      m.add_vertex(p);
    }
  }
  auto vid = [&](int i, int j) { return ((j % n + n) % n) * n + ((i % n + n) % n); };
  const double diag = std::sqrt(2.0) * h;
  for (int j = 0; j < n; j++) {
    for (int i = 0; i < n; i++) {
      const int A = vid(i, j), B = vid(i + 1, j), C = vid(i + 1, j + 1), D = vid(i, j + 1);
      m.add_face(A, B, C);
      m.add_face(A, C, D);
      m.set_length(A, B, h);
      m.set_length(B, C, h);
      m.set_length(C, D, h);
      m.set_length(A, D, h);
      m.set_length(A, C, diag);
    }
  }
  m.finalize();
  return m;
}

TriMesh make_torus_of_revolution(double R, double r, int nu, int nv) {
  if (nu < 3 || nv < 3) throw MeshError("torus of revolution needs nu,nv >= 3");
  TriMesh m;
  for (int i = 0; i < nu; i++) {
    const double u = 2 * kPi * i / nu;
    for (int j = 0; j < nv; j++) {
      const double v = 2 * kPi * j / nv;
      m.add_vertex(v3((R + r * std::cos(v)) * std::cos(u), (R + r * std::cos(v)) * std::sin(u),
                      r * std::sin(v)));
    }
  }
  auto vid = [&](int i, int j) { return ((i % nu + nu) % nu) * nv + ((j % nv + nv) % nv); };
  for (int i = 0; i < nu; i++) {
    for (int j = 0; j < nv; j++) {
      const int A = vid(i, j), B = vid(i + 1, j), C = vid(i + 1, j + 1), D = vid(i, j + 1);
      m.add_face(A, B, C);
      m.add_face(A, C, D);
    }
  }
  m.finalize();
  return m;
}

TriMesh make_disc(double radius, int rings, int sectors) {
  if (rings < 1 || sectors < 3) throw MeshError("disc needs rings >= 1, sectors >= 3");
  TriMesh m;
  m.add_vertex(v3(0, 0, 0));
  for (int k = 1; k <= rings; k++) {
    const double rho = radius * k / rings;
    for (int j = 0; j < sectors; j++) {
      const double t = 2 * kPi * j / sectors;
      m.add_vertex(v3(rho * std::cos(t), rho * std::sin(t), 0));
    }
  }
  auto vid = [&](int k, int j) { return 1 + (k - 1) * sectors + ((j % sectors + sectors) % sectors); };
  for (int j = 0; j < sectors; j++) m.add_face(0, vid(1, j), vid(1, j + 1));
  for (int k = 1; k < rings; k++) {
    for (int j = 0; j < sectors; j++) {
      const int A = vid(k, j), B = vid(k, j + 1), C = vid(k + 1, j + 1), D = vid(k + 1, j);
      m.add_face(A, C, D);
      m.add_face(A, B, C);
    }
  }
  m.finalize();
  return m;
}

TriMesh make_annulus(double r0, double r1, int rings, int sectors) {
  if (!(0 < r0 && r0 < r1) || rings < 1 || sectors < 3) throw MeshError("bad annulus parameters");
  TriMesh m;
  for (int k = 0; k <= rings; k++) {
    const double rho = r0 + (r1 - r0) * k / rings;
    for (int j = 0; j < sectors; j++) {
      const double t = 2 * kPi * j / sectors;
      m.add_vertex(v3(rho * std::cos(t), rho * std::sin(t), 0));
    }
  }
  auto vid = [&](int k, int j) { return k * sectors + ((j % sectors + sectors) % sectors); };
  for (int k = 0; k < rings; k++) {
    for (int j = 0; j < sectors; j++) {
      const int A = vid(k, j), B = vid(k, j + 1), C = vid(k + 1, j + 1), D = vid(k + 1, j);
      m.add_face(A, C, D);
      m.add_face(A, B, C);
    }
  }
  m.finalize();
  return m;
}

TriMesh make_surface_of_revolution(const std::function<double(double)>& profile, double length,
                                   int nu, int nv) {
  if (nu < 2 || nv < 3) throw MeshError("surface of revolution needs nu >= 2, nv >= 3");
  TriMesh m;
  const int south = m.add_vertex(v3(0, 0, 0));
  // rings i = 1..nu-1
  for (int i = 1; i < nu; i++) {
    const double u = static_cast<double>(i) / nu;
    const double rho = profile(u);
    if (!(rho > 0)) throw MeshError("profile must be positive in the interior");
    for (int j = 0; j < nv; j++) {
      const double t = 2 * kPi * j / nv;
      m.add_vertex(v3(length * u, rho * std::cos(t), rho * std::sin(t)));
    }
  }
  const int north = m.add_vertex(v3(length, 0, 0));
  auto vid = [&](int i, int j) { return 1 + (i - 1) * nv + ((j % nv + nv) % nv); };
  for (int j = 0; j < nv; j++) m.add_face(south, vid(1, j), vid(1, j + 1));
  for (int i = 1; i + 1 < nu; i++) {
    for (int j = 0; j < nv; j++) {
      const int A = vid(i, j), B = vid(i, j + 1), C = vid(i + 1, j + 1), D = vid(i + 1, j);
      m.add_face(A, C, D);
      m.add_face(A, B, C);
    }
  }
  for (int j = 0; j < nv; j++) m.add_face(vid(nu - 1, j), north, vid(nu - 1, j + 1));
  m.finalize();
  return m;
}

TriMesh make_dumbbell(int nu, int nv) {
  auto profile = [](double u) {
    const double bulge = std::sin(kPi * u);
    const double pinch = 1.0 - 0.85 * std::exp(-(u - 0.5) * (u - 0.5) / 0.008);
    return bulge * pinch;
  };
  return make_surface_of_revolution(profile, 3.0, nu, nv);
}

TriMesh make_genus2(int n) {
  if (n < 4) throw MeshError("genus-2 gluing needs n >= 4");
  const double h = 1.0 / n;
  const double diag = std::sqrt(2.0) * h;
  TriMesh m;
  const int N = n * n;
  for (int v = 0; v < 2 * N - 3; v++) m.add_vertex();

  auto vid1 = [&](int i, int j) { return ((j % n + n) % n) * n + ((i % n + n) % n); };
  // Torus 2 vertices follow torus 1's; its cell-(0,0) triangle corners are
  // identified with torus 1's: (0,0), (1,0), (1,1).
  const int A = vid1(0, 0), B = vid1(1, 0), C = vid1(1, 1);
  auto vid2 = [&](int i, int j) {
    const int raw = vid1(i, j);
    if (raw == A) return A;
    if (raw == B) return B;
    if (raw == C) return C;
    int id = N + raw;
    // compact: skip the three identified slots
    id -= (raw > A ? 1 : 0) + (raw > B ? 1 : 0) + (raw > C ? 1 : 0);
    return id;
  };

  for (int copy = 0; copy < 2; copy++) {
    auto vid = [&](int i, int j) { return copy == 0 ? vid1(i, j) : vid2(i, j); };
    for (int j = 0; j < n; j++) {
      for (int i = 0; i < n; i++) {
        const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
        const bool removed_cell = (i == 0 && j == 0);
        if (!removed_cell) {
          if (copy == 0)
            m.add_face(a, b, c);
          else
            m.add_face(a, c, b);  // reversed: keeps the glued surface orientable
        }
        if (copy == 0)
          m.add_face(a, c, d);
        else
          m.add_face(a, d, c);
        m.set_length(a, b, h);
        m.set_length(b, c, h);
        m.set_length(c, d, h);
        m.set_length(a, d, h);
        m.set_length(a, c, diag);
      }
    }
  }
  m.finalize();
  return m;
}

}  // namespace waistkit
