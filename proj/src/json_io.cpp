#include "bigcheck/json_io.hpp"

#include <fstream>
#include <sstream>

namespace bigcheck {

namespace {

const Json &member(const Json &j, const char *key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::uint64_t as_uint(const Json &j, const char *what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw ParseError(std::string(what) + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

std::uint64_t param_uint(const Json &params, const char *key, std::uint64_t fallback) {
  if (!params.is_object() || !params.contains(key))
    return fallback;
  return as_uint(params.at(key), key);
}

Group factor_group(const Json &j, const Field &f, std::size_t n, std::uint64_t seed,
                   std::size_t cap) {
  return family_from_json(j, f, n, seed, cap).group;
}

} // namespace

Json parse_json(const std::string &text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(e.what());
  }
}

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

Field field_from_json(const Json &j) {
  try {
    if (j.is_number_integer())
      return make_field(as_uint(j, "field"), 1);
    const std::uint64_t l = as_uint(member(j, "l"), "l");
    if (j.contains("modulus"))
      return make_field_with_modulus(l, j.at("modulus").get<std::vector<std::uint64_t>>());
    const std::uint64_t d = j.contains("d") ? as_uint(j.at("d"), "d") : 1;
    return make_field(l, static_cast<unsigned>(d));
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(e.what());
  } catch (const NotPrime &e) {
    throw ParseError(e.what());
  } catch (const PreconditionViolation &e) {
    throw ParseError(e.what());
  }
}

Json field_to_json(const Field &f) {
  Json j;
  j["l"] = f->characteristic();
  j["d"] = f->degree();
  if (f->degree() > 1)
    j["modulus"] = f->modulus();
  return j;
}

Elt element_from_json(const FieldSpec &f, const Json &j) {
  if (j.is_number_integer())
    return f.from_int(j.get<std::int64_t>());
  if (j.is_array()) {
    if (j.size() > f.degree())
      throw ParseError("coefficient list longer than the field degree");
    std::vector<std::uint64_t> c(f.degree(), 0);
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number_integer())
        throw ParseError("field coefficients must be integers");
      c[i] = f.from_int(j[i].get<std::int64_t>());
    }
    return f.encode(c);
  }
  throw ParseError("field element must be an integer or a coefficient list");
}

Json element_to_json(const FieldSpec &f, Elt a) {
  if (f.degree() == 1)
    return a;
  return f.coeffs(a);
}

Json matrix_to_json(const Matrix &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(element_to_json(m.spec(), m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Field &f, std::size_t rows, std::size_t cols, const Json &j) {
  if (!j.is_array() || j.size() != rows)
    throw ParseError("matrix must have " + std::to_string(rows) + " rows");
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ParseError("matrix row must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m(i, c) = element_from_json(*f, j[i][c]);
  }
  return m;
}

Group group_from_json(const Json &j, std::size_t cap) {
  if (!j.is_object())
    throw ParseError("group must be a JSON object");
  Field f = field_from_json(member(j, "field"));
  const std::size_t n = as_uint(member(j, "n"), "n");
  if (n == 0)
    throw ParseError("n must be positive");
  const Json &gens = member(j, "generators");
  if (!gens.is_array())
    throw ParseError("generators must be a list");
  std::vector<Matrix> mats;
  for (const auto &g : gens)
    mats.push_back(matrix_from_json(f, n, n, g));
  try {
    return MatrixGroup::close(f, n, std::move(mats), cap);
  } catch (const NotInvertible &e) {
    throw ParseError(e.what());
  }
}

Json group_to_json(const MatrixGroup &g) {
  Json j;
  j["field"] = field_to_json(g.field());
  j["n"] = g.n();
  Json gens = Json::array();
  for (const auto &m : g.generators())
    gens.push_back(matrix_to_json(m));
  j["generators"] = std::move(gens);
  return j;
}

LabeledGroup family_from_json(const Json &j, const Field &default_field, std::size_t default_n,
                              std::uint64_t default_seed, std::size_t cap) {
  if (!j.is_object())
    throw ParseError("family specification must be a JSON object");
  const std::string family = member(j, "family").get<std::string>();
  const Field f = j.contains("field") ? field_from_json(j.at("field")) : default_field;
  if (!f)
    throw ParseError("family " + family + " needs a field");
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  const std::size_t n = param_uint(params, "n", j.contains("n") ? as_uint(j.at("n"), "n") : default_n);
  const std::uint64_t seed = j.contains("seed") ? as_uint(j.at("seed"), "seed") : default_seed;

  if (family == "reducible")
    return reducible_group(f, n, param_uint(params, "d", 1), cap);
  if (family == "wreath" || family == "imprimitive") {
    const std::size_t b = param_uint(params, "block_dim", 1);
    return imprimitive_wreath(f, b, param_uint(params, "m", n / b), cap);
  }
  if (family == "sl_scalars")
    return sl_scalars(f, n, cap);
  if (family == "almost_simple_lift")
    return almost_simple_lift(f, n, cap);
  if (family == "binary_tetrahedral") {
    LabeledGroup out;
    out.group = binary_tetrahedral(f);
    out.construction = "almost_simple_lift";
    out.params = "n=2 base=2.A4";
    return out;
  }
  if (family == "binary_tetrahedral_tensor")
    return binary_tetrahedral_tensor(f->characteristic());
  if (family == "induced_tensor")
    return induced_tensor(f, param_uint(params, "a", 3), param_uint(params, "b", 4), cap);
  if (family == "random")
    return random_subgroup(f, n, param_uint(params, "generators", 2), seed, cap);
  if (family == "tensor_product" || family == "iterated_tensor") {
    const Json &fs = member(params, "factors");
    if (!fs.is_array() || fs.size() < 2)
      throw ParseError("tensor families need at least two factors");
    std::vector<Group> factors;
    for (const auto &fj : fs)
      factors.push_back(factor_group(fj, f, 2, seed, cap));
    auto out = iterated_tensor(factors, cap);
    out.construction = family;
    return out;
  }
  throw ParseError("unknown family \"" + family + "\"");
}

Json report_to_json(const BignessReport &r, const MatrixGroup &g) {
  Json j;
  j["field"] = field_to_json(r.field);
  j["n"] = r.n;
  j["order"] = r.order;
  j["M"] = r.M;
  j["verdict"] = r.verdict();
  j["failing_conditions"] = r.failing_conditions();

  Json c;
  auto cond = [](bool evaluated, bool holds) {
    Json x;
    x["evaluated"] = evaluated;
    if (evaluated)
      x["holds"] = holds;
    return x;
  };
  Json q = cond(r.evaluated_quotient, r.cond_quotient);
  if (r.evaluated_quotient)
    q["abelianization_order"] = r.abelianization;
  c["no_l_power_quotient"] = std::move(q);
  Json h0 = cond(r.evaluated_h0, r.cond_h0);
  if (r.evaluated_h0)
    h0["dimension"] = r.h0_dimension;
  c["h0"] = std::move(h0);
  Json h1 = cond(r.evaluated_h1, r.cond_h1);
  if (r.evaluated_h1) {
    h1["dimension"] = r.h1_dimension;
    h1["fast_path"] = r.h1_fast_path;
  }
  c["h1"] = std::move(h1);
  Json w = cond(r.evaluated_witnesses, r.cond_witnesses);
  if (r.evaluated_witnesses) {
    w["span_rank"] = r.witness_span_rank;
    w["witness_free_dimension"] = r.witness_free_dimension;
    w["exhaustive"] = r.exhaustive;
    w["truncated"] = r.truncated;
    Json subs = Json::array();
    for (const auto &e : r.witness_table) {
      Json s;
      s["dimension"] = e.submodule.dim();
      s["scalar_line"] = e.scalar_line;
      s["basis"] = matrix_to_json(e.submodule.basis);
      if (e.witness) {
        Json x;
        x["h"] = matrix_to_json(g.element(e.witness->h_index));
        x["alpha"] = element_to_json(*r.field, e.witness->alpha);
        x["basis_row"] = e.witness->basis_row;
        s["witness"] = std::move(x);
      } else {
        s["witness"] = nullptr;
      }
      if (e.extension) {
        Json x;
        x["h"] = matrix_to_json(g.element(e.extension->h_index));
        x["splitting_degree"] = e.extension->splitting_degree;
        s["extension_witness"] = std::move(x);
      }
      subs.push_back(std::move(s));
    }
    w["submodules"] = std::move(subs);
  }
  c["witnesses"] = std::move(w);
  j["conditions"] = std::move(c);
  if (r.seconds >= 0)
    j["seconds"] = r.seconds;
  return j;
}

} // namespace bigcheck
