#pragma once

#include "canyon/canyon.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace canyon {

struct NetworkMember {
  PuiseuxSeries series;  // γ̂_k + ε y^{d_k}
  int polar = 0;         // polar record index
  int copy = 0;          // conjugate / multiplicity copy within the record
  Rational d;
  cplx eps;
};

struct NetworkRecord {
  std::string eps_tag;
  std::vector<NetworkMember> members;
};

struct NetworkOptions {
  double eps_max = 1.0 / 16;
  double min_separation = 1e-3;
};

// f must be squarefree and every polar must have finite gradient degree.
std::pair<NetworkRecord, NetworkRecord> build_twin_networks(const BiPoly& f,
                                                            const std::vector<PolarRecord>& polars,
                                                            unsigned long seed,
                                                            const NetworkOptions& opt = {});

struct LinkingMatrix {
  std::vector<std::vector<QExt>> entries;
  QExt total;
};
LinkingMatrix linking_number(const NetworkRecord& a, const NetworkRecord& b);

// ord_w Res_z(f_z, f_w); valid as a local intersection number only when
// f_z(z, 0) = c z^{deg_z f_z}, otherwise OracleNotApplicable.
long resultant_milnor(const BiPoly& f);

struct MilnorResult {
  long mu = 0;
  std::vector<Rational> per_polar;  // one entry per member, multiplicity expanded
  std::optional<long> oracle;       // unset when the resultant oracle does not apply
  bool agrees = true;
};
MilnorResult milnor_number(const BiPoly& f, const std::vector<PolarRecord>& polars);

}  // namespace canyon
