#pragma once

#include "canyon/series.hpp"

#include <vector>

namespace canyon {

struct Dot {
  int i;
  Rational q;
};
bool operator==(const Dot& a, const Dot& b);

struct Edge {
  Dot left;   // smaller i, larger q
  Dot right;
  Rational coslope;
};

struct NewtonPolygon {
  std::vector<Dot> dots;
  std::vector<Dot> vertices;  // from the top-left vertex down to the bottom
  std::vector<Edge> edges;    // increasing co-slope: edges[0] is E_1

  bool has_top() const;  // top-left vertex lies on column 0
  // tanθ of E_1 / E_top; only meaningful when edges is non-empty.
  const Rational& coslope_bottom() const { return edges.front().coslope; }
  const Rational& coslope_top() const { return edges.back().coslope; }
};

// Co-slope of the line through (i1,q1), (i2,q2), i1 != i2.
Rational coslope(const Dot& a, const Dot& b);

NewtonPolygon build_polygon(const BiSeries& G);

struct WeightedForm {
  BiSeries form;
  Rational order;
};
// Terms of G minimizing i*e + q.
WeightedForm weighted_initial_form(const BiSeries& G, const Rational& e);
Rational weighted_order(const BiSeries& G, const Rational& e);

struct SupportLine {
  Rational sigma_star;
  std::vector<Dot> touching;  // dots (m*, q*) of F_Z attaining the line
};
// Steepest line through (1, h-1) that keeps every shifted dot (m*+1, q*) of
// F_Z on or above it: σ* = max over m* >= 1 of (h-1-q*)/m*.
SupportLine sigma_star_support_line(const NewtonPolygon& fz_polygon, const Rational& h);

}  // namespace canyon
