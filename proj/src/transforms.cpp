#include "ob/transforms.hpp"

#include <algorithm>

namespace ob {

Obs to_priced(const Obs& obs) {
  validate(obs);
  if (obs.priced)
    throw ValidationError("priced", "instance is already priced");
  Obs out = obs;
  out.priced = true;
  for (auto& p : out.past) p.price = 1;
  out.current.price = 1;
  for (auto& f : out.future) f.price = 1;
  // unpriced k counted bribes; unit prices keep the accounting identical
  return out;
}

Obs to_weighted(const Obs& obs) {
  validate(obs);
  if (obs.weighted)
    throw ValidationError("weighted", "instance is already weighted");
  Obs out = obs;
  out.weighted = true;
  for (auto& p : out.past) p.weight = 1;
  out.current.weight = 1;
  for (auto& f : out.future) f.weight = 1;
  return out;
}

std::vector<int> last_k_positions(const Obs& obs) {
  validate(obs);
  if (obs.priced || obs.weighted)
    throw ValidationError("", "last-k restriction needs an unpriced, "
                              "unweighted instance");
  const Resources res = remaining_resources(obs);
  const int nsuffix = 1 + static_cast<int>(obs.future.size());
  const int64_t count = std::min<int64_t>(*res.count_left, nsuffix);
  std::vector<int> out;
  for (int p = nsuffix - static_cast<int>(count); p < nsuffix; ++p)
    out.push_back(p);
  return out;
}

std::vector<std::string> transform_names() {
  // registry; reduction-style transforms can be added here later
  return {"to_priced", "to_weighted"};
}

TransformReport apply_transform(const std::string& name, const Obs& obs) {
  TransformReport report;
  report.name = name;
  report.relation = TransformReport::Relation::Equal;
  if (name == "to_priced") report.target = to_priced(obs);
  else if (name == "to_weighted") report.target = to_weighted(obs);
  else throw ValidationError("transform", "unknown transform '" + name + "'");
  return report;
}

}  // namespace ob
