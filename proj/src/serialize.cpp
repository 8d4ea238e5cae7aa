#include "parcoh/serialize.hpp"

#include "parcoh/errors.hpp"

namespace parcoh {

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("matrix: expected a non-empty array of rows");
  const auto rows = j.size(), cols = j[0].size();
  Mat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) throw ConfigError("matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[r][c];
      if (e.is_number()) m(r, c) = e.get<double>();
      else if (e.is_array() && e.size() == 2) m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
      else throw ConfigError("matrix: entries must be numbers or [re, im]");
    }
  }
  return m;
}

json chain_to_json(const BarChain2& c) {
  json out = json::array();
  for (const auto& [cell, coeff] : c.cells())
    out.push_back({{"left", cell.first.str()}, {"right", cell.second.str()}, {"coefficient", coeff}});
  return out;
}

BarChain2 chain_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("chain: expected an array of cells");
  BarChain2 c;
  for (const json& cell : j) {
    try {
      c.add(Word::parse(cell.at("left").get<std::string>()), Word::parse(cell.at("right").get<std::string>()),
            cell.at("coefficient").get<double>());
    } catch (const json::exception& e) {
      throw ConfigError(std::string("chain cell: ") + e.what());
    }
  }
  return c;
}

Backend backend_from_name(const std::string& name) {
  if (name == "su2") return Backend::su2();
  if (name == "sl2r") return Backend::sl2r();
  if (name == "u1") return Backend::u1k(1);
  for (const std::string prefix : {"u1:", "u1^"}) {
    if (name.rfind(prefix, 0) == 0) {
      try {
        std::size_t pos = 0;
        const int k = std::stoi(name.substr(prefix.size()), &pos);
        if (pos + prefix.size() == name.size() && k >= 1) return Backend::u1k(k);
      } catch (const std::exception&) {
      }
    }
  }
  throw ConfigError("unknown backend '" + name + "' (expected su2, sl2r, u1 or u1:k)");
}

json rep_to_json(const RepresentationPoint& phi) {
  json j;
  j["backend"] = phi.backend.name();
  j["genus"] = phi.surface.genus;
  j["boundary"] = phi.surface.boundary;
  for (const auto& [key, list] : {std::pair<const char*, const std::vector<Mat>*>{"x", &phi.x},
                                  {"y", &phi.y}, {"z", &phi.z}}) {
    json arr = json::array();
    for (const Mat& m : *list) arr.push_back(mat_to_json(m));
    j[key] = arr;
  }
  return j;
}

RepresentationPoint rep_from_json(const json& j) {
  try {
    SurfaceData s{j.at("genus").get<int>(), j.at("boundary").get<int>()};
    s.validate();
    RepresentationPoint phi(backend_from_name(j.at("backend").get<std::string>()), s);
    for (auto [key, list] : {std::pair<const char*, std::vector<Mat>*>{"x", &phi.x}, {"y", &phi.y}, {"z", &phi.z}}) {
      const json& arr = j.at(key);
      if (arr.size() != list->size()) throw ConfigError(std::string("point: wrong number of '") + key + "' values");
      for (std::size_t i = 0; i < list->size(); ++i) {
        (*list)[i] = mat_from_json(arr[i]);
        if (!phi.backend.in_group((*list)[i], 1e-9))
          throw ConfigError(std::string("point: '") + key + std::to_string(i + 1) + "' is not in the group");
      }
    }
    return phi;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("point: ") + e.what());
  }
}

json report_to_json(const CohomologyReport& r) {
  return {{"variant", variant_name(r.variant)},
          {"cochain_dims", {r.c0, r.c1, r.c2}},
          {"rank_d0", r.rank_d0},
          {"rank_d1", r.rank_d1},
          {"h", {r.h0, r.h1, r.h2}},
          {"z1", r.z1},
          {"stabilizer", r.stabilizer},
          {"rank_margin_decades", r.rank_margin},
          {"d1d0", r.defect}};
}

json fixture_to_json(const Fixture& f) {
  json params = json::object();
  for (const auto& [k, v] : f.params) params[k] = v;
  return {{"name", f.name},
          {"description", f.description},
          {"provenance", f.provenance},
          {"params", params},
          {"relator_defect", f.phi.relator_defect()},
          {"point", rep_to_json(f.phi)}};
}

}  // namespace parcoh
