#pragma once

#include "toric/cohomology.hpp"

#include <sstream>

namespace toric {

// Lattice diagram of a divisor in M_R: hyperplanes <l_i, m> = -c_i, the polygon
// traced by consecutive hyperplane intersections (edge i has lattice length d_i),
// G_D as filled dots, G_D° as open circles and, given a basis, the triangles T_k.
struct SvgOptions {
  i64 radius = 6; // lattice window [-radius, radius]^2
  int unit = 32;  // pixels per lattice step
};

namespace detail {

inline std::string fmt_px(i64 num, i64 den) {
  // num/den to at most three decimals
  std::ostringstream o;
  i64 q = floor_div(num * 1000, den);
  if (q < 0) {
    o << '-';
    q = -q;
  }
  i64 ip = q / 1000, fp = q % 1000;
  o << ip;
  if (fp != 0) {
    std::string f = std::to_string(fp + 1000).substr(1);
    while (!f.empty() && f.back() == '0')
      f.pop_back();
    o << '.' << f;
  }
  return o.str();
}

// Clip the line a.m = b to the square [-r, r]^2; returns endpoints scaled by den.
inline std::optional<std::array<i64, 5>> clip_line(const Vec2 &a, i64 b, i64 r) {
  std::vector<std::array<i64, 3>> pts; // x*den, y*den, den
  auto push = [&](i64 xn, i64 yn, i64 den) {
    if (den < 0) {
      xn = -xn;
      yn = -yn;
      den = -den;
    }
    if (xn < -r * den || xn > r * den || yn < -r * den || yn > r * den)
      return;
    for (auto &p : pts)
      if (p[0] * den == xn * p[2] && p[1] * den == yn * p[2])
        return;
    pts.push_back({xn, yn, den});
  };
  for (i64 s : {-r, r}) {
    if (a[1] != 0) // x = s
      push(s * a[1], b - a[0] * s, a[1]);
    if (a[0] != 0) // y = s
      push(b - a[1] * s, s * a[0], a[0]);
  }
  if (pts.size() < 2)
    return std::nullopt;
  std::sort(pts.begin(), pts.end(), [](const auto &p, const auto &q) {
    return p[0] * q[2] < q[0] * p[2] || (p[0] * q[2] == q[0] * p[2] && p[1] * q[2] < q[1] * p[2]);
  });
  auto &p = pts.front(), &q = pts.back();
  i64 den = p[2] * q[2];
  return std::array<i64, 5>{p[0] * q[2], p[1] * q[2], q[0] * p[2], q[1] * p[2], den};
}

} // namespace detail

inline std::string render_svg(const Surface &x, const Vec &d, const MinimalModelBasis *basis = nullptr,
                              SvgOptions opt = {}) {
  if (!is_class(x, d))
    throw Error("not-a-class", "d-vector is not a divisor class");
  Vec c = basis ? layered_representative(*basis, d) : c_representative(x, d);
  auto sections = chamber_points(x, c);
  auto interior = chamber_points(x, c, -1);
  const i64 r = opt.radius, u = opt.unit;
  const i64 size = 2 * r * u + 2 * u;
  auto px = [&](i64 num, i64 den) { return detail::fmt_px((num + r * den) * u + u * den, den); };
  auto py = [&](i64 num, i64 den) { return detail::fmt_px((r * den - num) * u + u * den, den); };
  auto inside = [&](const Vec2 &m) { return m[0] >= -r && m[0] <= r && m[1] >= -r && m[1] <= r; };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
    << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
  // 1. lattice
  o << "<g id=\"lattice\" fill=\"#bbbbbb\">\n";
  for (i64 y = r; y >= -r; --y)
    for (i64 xx = -r; xx <= r; ++xx)
      o << "<circle cx=\"" << px(xx, 1) << "\" cy=\"" << py(y, 1) << "\" r=\"1.5\"/>\n";
  o << "</g>\n";
  // 2. triangles
  o << "<g id=\"triangles\" fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"#3182bd\">\n";
  if (basis) {
    Vec coords = basis->to_coords(d);
    for (int k = 0; k < basis->t(); ++k) {
      i64 gamma = coords[basis->head() + k];
      if (gamma > 0)
        continue;
      auto [p, q] = basis->cone_of_R[k];
      const Vec2 &lp = x.rays[p], &lq = x.rays[q];
      Vec2 mp{lq[1], -lq[0]}, mq{-lp[1], lp[0]};
      Vec2 m0{-c[p] * mp[0] - c[q] * mq[0], -c[p] * mp[1] - c[q] * mq[1]};
      i64 g = -gamma;
      Vec2 v1{m0[0] + g * mp[0], m0[1] + g * mp[1]}, v2{m0[0] + g * mq[0], m0[1] + g * mq[1]};
      o << "<polygon data-step=\"" << k + 1 << "\" points=\"" << px(m0[0], 1) << ',' << py(m0[1], 1) << ' '
        << px(v1[0], 1) << ',' << py(v1[1], 1) << ' ' << px(v2[0], 1) << ',' << py(v2[1], 1) << "\"/>\n";
    }
  }
  o << "</g>\n";
  // 3. hyperplanes
  o << "<g id=\"hyperplanes\" stroke=\"#636363\" stroke-width=\"1\">\n";
  for (int i = 0; i < x.n(); ++i)
    if (auto seg = detail::clip_line(x.rays[i], -c[i], r)) {
      auto [x1, y1, x2, y2, den] = *seg;
      o << "<line data-ray=\"" << i << "\" x1=\"" << px(x1, den) << "\" y1=\"" << py(y1, den) << "\" x2=\""
        << px(x2, den) << "\" y2=\"" << py(y2, den) << "\"/>\n";
    }
  o << "</g>\n";
  // 4. polygon of consecutive intersections
  o << "<polyline id=\"d-vector\" fill=\"none\" stroke=\"#e6550d\" stroke-width=\"2\" points=\"";
  for (int k = 0; k <= x.n(); ++k) {
    int i = k % x.n(), j = x.next(i);
    const Vec2 &a = x.rays[i], &b = x.rays[j];
    // <a, m> = -c_i, <b, m> = -c_j with det(a, b) = 1
    i64 bi = -c[i], bj = -c[j];
    Vec2 m{bi * b[1] - bj * a[1], bj * a[0] - bi * b[0]};
    o << (k ? " " : "") << px(m[0], 1) << ',' << py(m[1], 1);
  }
  o << "\"/>\n";
  // 5. sections and interior points
  o << "<g id=\"sections\" fill=\"black\">\n";
  for (auto &m : sections)
    if (inside(m))
      o << "<circle cx=\"" << px(m[0], 1) << "\" cy=\"" << py(m[1], 1) << "\" r=\"4\"/>\n";
  o << "</g>\n";
  o << "<g id=\"interior\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n";
  for (auto &m : interior)
    if (inside(m))
      o << "<circle cx=\"" << px(m[0], 1) << "\" cy=\"" << py(m[1], 1) << "\" r=\"7\"/>\n";
  o << "</g>\n";
  o << "</svg>\n";
  return o.str();
}

} // namespace toric
