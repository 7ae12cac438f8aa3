#include "lensclass/serialize.hpp"

#include <limits>

namespace lensclass {

using nlohmann::json;

json to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const ModifiedLensGraph& g) {
  json order = json::array();
  for (const auto& v : g.vertex_order) order.push_back({v.level, v.offset});
  return {{"schema", kSchema},
          {"r", g.params.r},
          {"weights", g.params.weights},
          {"s_sets", g.s_sets},
          {"vertex_order", order},
          {"matrix", to_json(g.matrix)}};
}

json to_json(const FormulaMatrix& f, const LensParams& p) {
  json mask = json::array();
  for (const auto& [i, j] : f.modr_mask) mask.push_back({i, j});
  return {{"schema", kSchema},
          {"r", p.r},
          {"weights", p.weights},
          {"dim", f.pattern.dim},
          {"ell", f.pattern.ell},
          {"K", f.pattern.K},
          {"matrix", to_json(f.matrix)},
          {"modr_mask", mask}};
}

json to_json(const Witness& w) {
  json moves = json::array();
  for (const auto& m : w.moves)
    moves.push_back({{"kind", to_string(m.kind)},
                     {"target", m.target},
                     {"source", m.source},
                     {"multiplicity", to_json(m.multiplicity)}});
  return {{"U", to_json(w.U.entries)}, {"V", to_json(w.V.entries)}, {"moves", moves}};
}

json to_json(const InvariantSignature& s) {
  json res = json::array();
  for (const auto& [label, value] : s.residues) res.push_back({label, value});
  return {{"dim", s.dim}, {"ell", s.ell}, {"K", s.K}, {"residues", res}};
}

IntMatrix matrix_from_json(const json& rows) {
  if (!rows.is_array()) throw Error(ErrorCode::ShapeMismatch, "matrix must be an array of rows");
  const Index n = static_cast<Index>(rows.size());
  const Index m = n ? static_cast<Index>(rows[0].size()) : 0;
  IntMatrix out(n, m);
  for (Index i = 0; i < n; ++i) {
    if (static_cast<Index>(rows[i].size()) != m) throw Error(ErrorCode::ShapeMismatch, "ragged matrix");
    for (Index j = 0; j < m; ++j) {
      const auto& e = rows[i][j];
      out(i, j) = e.is_string() ? BigInt(e.get<std::string>()) : BigInt(e.get<std::int64_t>());
    }
  }
  return out;
}

}  // namespace lensclass
