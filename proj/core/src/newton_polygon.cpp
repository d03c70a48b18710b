#include "canyon/newton_polygon.hpp"

#include "canyon/errors.hpp"

#include <algorithm>
#include <map>

namespace canyon {

bool operator==(const Dot& a, const Dot& b) { return a.i == b.i && a.q == b.q; }

bool NewtonPolygon::has_top() const { return !vertices.empty() && vertices.front().i == 0; }

Rational coslope(const Dot& a, const Dot& b) {
  Rational r = (a.q - b.q) / Rational(b.i - a.i);
  return r;
}

NewtonPolygon build_polygon(const BiSeries& G) {
  NewtonPolygon P;
  std::map<int, Rational> lowest;  // per column, the smallest q
  for (const auto& [k, c] : G.terms()) {
    P.dots.push_back({k.first, k.second});
    auto it = lowest.find(k.first);
    if (it == lowest.end() || k.second < it->second) lowest[k.first] = k.second;
  }
  if (lowest.empty()) return P;
  // bottom vertex: smallest q, leftmost among those
  int i_end = lowest.begin()->first;
  Rational q_min = lowest.begin()->second;
  for (const auto& [i, q] : lowest)
    if (q < q_min) {
      q_min = q;
      i_end = i;
    }
  std::vector<Dot> hull;
  for (const auto& [i, q] : lowest) {
    if (i > i_end) break;
    Dot d{i, q};
    while (hull.size() >= 2) {
      const Dot& a = hull[hull.size() - 2];
      const Dot& b = hull.back();
      // keep b only if it lies strictly below segment a-d
      Rational cross = Rational(b.i - a.i) * (d.q - a.q) - (b.q - a.q) * Rational(d.i - a.i);
      if (sgn(cross) <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(d);
  }
  P.vertices = hull;
  for (std::size_t k = hull.size(); k-- > 1;)
    P.edges.push_back({hull[k - 1], hull[k], coslope(hull[k - 1], hull[k])});
  return P;
}

Rational weighted_order(const BiSeries& G, const Rational& e) {
  return weighted_initial_form(G, e).order;
}

WeightedForm weighted_initial_form(const BiSeries& G, const Rational& e) {
  if (G.is_zero()) {
    if (G.trunc_order().infinite) throw PreconditionViolation("weighted_initial_form: G = 0");
    throw InsufficientTruncation("weighted_initial_form: no certified terms up to " +
                                 G.trunc_order().str());
  }
  bool first = true;
  Rational best;
  for (const auto& [k, c] : G.terms()) {
    Rational o = e * k.first + k.second;
    if (first || o < best) {
      best = o;
      first = false;
    }
  }
  if (!G.trunc_order().infinite && best > G.trunc_order().value)
    throw InsufficientTruncation("weighted order " + best.get_str() +
                                 " exceeds certified depth " + G.trunc_order().str());
  WeightedForm out;
  out.order = best;
  out.form.set_trunc_order(G.trunc_order());
  if (G.is_exact()) {
    out.form.mark_exact(true);
    for (const auto& [k, c] : *G.exact())
      if (e * k.first + k.second == best) out.form.add_exact(k.first, k.second, c);
  } else {
    for (const auto& [k, c] : G.terms())
      if (e * k.first + k.second == best) out.form.add(k.first, k.second, c.c, c.mag);
  }
  return out;
}

SupportLine sigma_star_support_line(const NewtonPolygon& fz, const Rational& h) {
  SupportLine s;
  bool any = false;
  for (const auto& d : fz.dots) {
    if (d.i < 1) continue;
    Rational v = (h - 1 - d.q) / Rational(d.i);
    if (!any || v > s.sigma_star) {
      s.sigma_star = v;
      any = true;
    }
  }
  if (!any) throw NoDots("F_Z has no dots right of column 0");
  for (const auto& d : fz.dots)
    if (d.i >= 1 && Rational(d.i) * s.sigma_star + d.q == h - 1) s.touching.push_back(d);
  std::sort(s.touching.begin(), s.touching.end(), [](const Dot& a, const Dot& b) { return a.i < b.i; });
  return s;
}

}  // namespace canyon
