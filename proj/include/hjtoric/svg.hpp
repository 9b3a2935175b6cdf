#pragma once

// Cut diagram of a weighted blowup: the quadrant with the successive corner
// cuts removed, lattice points as dots, each cut edge labeled with its
// direction and self-intersection.

#include <sstream>
#include <string>

#include "hjtoric/weighted_blowup.hpp"

namespace hjtoric {

namespace detail {

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Integer ceil_rational(const Rational& q) {
  const Integer n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
  Integer c = n / d;
  if (n % d != 0 && n > 0) c += 1;
  return c;
}

}  // namespace detail

inline std::string cut_diagram_svg(const McDuffSequence& seq, unsigned scale = 40) {
  if (scale == 0) throw DomainError("scale must be positive");
  const Polygon& poly = seq.polygon;

  Rational reach = 0;
  for (const auto& v : poly.vertices()) reach = std::max({reach, v.x, v.y});
  const Integer extent = detail::ceil_rational(reach) + 1;
  const long long n = extent.convert_to<long long>();
  const double s = scale, margin = s, side = (n * s) + 2 * margin;

  auto X = [&](const Rational& x) { return margin + detail::to_double(x) * s; };
  auto Y = [&](const Rational& y) { return side - margin - detail::to_double(y) * s; };

  std::ostringstream o;
  o.precision(10);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side << "\" viewBox=\"0 0 "
    << side << ' ' << side << "\">\n";
  o << "<title>E(" << seq.q << "," << seq.p << ") corner cuts</title>\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // removed corner
  o << "<polygon fill=\"#dddddd\" stroke=\"none\" points=\"" << X(0) << ',' << Y(0);
  for (auto it = poly.vertices().rbegin(); it != poly.vertices().rend(); ++it) o << ' ' << X(it->x) << ',' << Y(it->y);
  o << "\"/>\n";

  // what is left of the quadrant
  o << "<polygon fill=\"#cfe3f7\" stroke=\"#1f4e79\" stroke-width=\"2\" points=\"" << X(0) << ',' << Y(extent);
  for (const auto& v : poly.vertices()) o << ' ' << X(v.x) << ',' << Y(v.y);
  o << ' ' << X(extent) << ',' << Y(0) << ' ' << X(extent) << ',' << Y(extent) << "\"/>\n";

  for (long long i = 0; i <= n; ++i) {
    for (long long j = 0; j <= n; ++j) {
      o << "<circle cx=\"" << X(i) << "\" cy=\"" << Y(j) << "\" r=\"" << s / 20 << "\" fill=\"#555555\"/>\n";
    }
  }

  for (std::size_t e = 1; e + 1 < poly.edge_count(); ++e) {
    const auto& a = poly.vertices()[e - 1];
    const auto& b = poly.vertices()[e];
    const LatticeVec& c = poly.conormals()[e];
    o << "<text x=\"" << (X(a.x) + X(b.x)) / 2 + s / 8 << "\" y=\"" << (Y(a.y) + Y(b.y)) / 2 - s / 8
      << "\" font-family=\"sans-serif\" font-size=\"" << s / 3 << "\" fill=\"#8b0000\">(" << -c.x << ',' << -c.y
      << ") " << edge_self_intersection(poly, e) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace hjtoric
