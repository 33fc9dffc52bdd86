// Copyright 2026 The vqsdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vqsdp/errors.hpp"
#include "vqsdp/problems.hpp"

namespace vqsdp {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

const json& field(const json& obj, const std::string& key, const std::string& context) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(context + ": missing field '" + key + "'");
  return obj.at(key);
}

double number(const json& v, const std::string& context) {
  if (!v.is_number()) throw ParseError(context + ": expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& context) {
  if (!v.is_number_integer()) throw ParseError(context + ": expected an integer");
  return v.get<int>();
}

Matrix matrix_from_json(const json& v, int dim, const std::string& context) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim) {
    throw ParseError(context + ": expected " + std::to_string(dim) + " rows");
  }
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const std::string row_ctx = context + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || static_cast<int>(v[i].size()) != dim) {
      throw ParseError(row_ctx + ": expected " + std::to_string(dim) + " entries");
    }
    for (int j = 0; j < dim; ++j) {
      const json& e = v[i][j];
      const std::string ctx = row_ctx + "[" + std::to_string(j) + "]";
      if (!e.is_array() || e.size() != 2) throw ParseError(ctx + ": expected [re, im] pair");
      m(i, j) = Complex(number(e[0], ctx), number(e[1], ctx));
    }
  }
  return m;
}

// HermiticityError from the operator constructor carries the field name.
HermitianOperator hermitian_from_json(const json& v, int dim, const std::string& context) {
  Matrix m = matrix_from_json(v, dim, context);
  try {
    return HermitianOperator(std::move(m));
  } catch (const HermiticityError& e) {
    throw HermiticityError(context + ": " + e.what());
  }
}

const char* kind_name(const SdpInstance& instance) {
  if (instance.is_general()) return "matrix-inequality";
  return instance.standard().kind == ConstraintKind::Equality ? "equality" : "inequality";
}

}  // namespace

std::string instance_to_json(const SdpInstance& instance) {
  instance.validate();
  json out;
  out["version"] = kInstanceSchema;
  out["form"] = instance.is_general() ? "general" : "standard";
  out["kind"] = kind_name(instance);
  out["dim"] = instance.dim();
  out["num_constraints"] = instance.num_constraints();
  if (instance.is_general()) {
    const auto& g = instance.general();
    out["c"] = matrix_to_json(g.c.matrix());
    out["choi"] = {{"in_dim", g.choi.in_dim()}, {"out_dim", g.choi.out_dim()},
                   {"entries", matrix_to_json(g.choi.matrix())}};
    out["b_op"] = matrix_to_json(g.b_op.matrix());
  } else {
    const auto& s = instance.standard();
    out["c"] = matrix_to_json(s.c.matrix());
    json ops = json::array();
    for (const auto& op : s.constraints.constraint_ops()) ops.push_back(matrix_to_json(op.matrix()));
    out["constraints"] = std::move(ops);
    out["rhs"] = std::vector<double>(s.rhs.data(), s.rhs.data() + s.rhs.size());
    out["slack_count"] = s.slack_count;
  }
  out["metadata"] = {{"name", instance.metadata.name},
                     {"seed", instance.metadata.seed},
                     {"generator", instance.metadata.generator}};
  out["feasible_witness"] =
      instance.feasible_witness ? matrix_to_json(*instance.feasible_witness) : json(nullptr);
  return out.dump(1);
}

SdpInstance instance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  const std::string root = "instance";
  const json& version = field(doc, "version", root);
  if (!version.is_string() || version.get<std::string>() != kInstanceSchema) {
    throw ParseError("version: expected \"" + std::string(kInstanceSchema) + "\", got " + version.dump());
  }
  const json& form = field(doc, "form", root);
  if (!form.is_string()) throw ParseError("form: expected a string");
  const std::string form_name = form.get<std::string>();
  const int dim = integer(field(doc, "dim", root), "dim");
  const int m = integer(field(doc, "num_constraints", root), "num_constraints");
  if (dim < 1 || m < 1) throw ParseError("dim/num_constraints must be positive");

  SdpInstance out;
  if (form_name == "general") {
    const HermitianOperator c = hermitian_from_json(field(doc, "c", root), dim, "c");
    const json& choi = field(doc, "choi", root);
    const int in_dim = integer(field(choi, "in_dim", "choi"), "choi.in_dim");
    const int out_dim = integer(field(choi, "out_dim", "choi"), "choi.out_dim");
    if (in_dim != dim || out_dim != m) throw ParseError("choi: in_dim/out_dim do not match dim/num_constraints");
    Matrix entries = matrix_from_json(field(choi, "entries", "choi"), in_dim * out_dim, "choi.entries");
    if (!is_hermitian(entries)) throw HermiticityError("choi.entries: matrix is not Hermitian");
    const HermitianOperator b = hermitian_from_json(field(doc, "b_op", root), m, "b_op");
    out.form = GeneralForm{c, ChoiMatrix(in_dim, out_dim, std::move(entries)), b};
  } else if (form_name == "standard") {
    const HermitianOperator c = hermitian_from_json(field(doc, "c", root), dim, "c");
    const json& kind = field(doc, "kind", root);
    ConstraintKind k;
    if (kind == "equality") {
      k = ConstraintKind::Equality;
    } else if (kind == "inequality") {
      k = ConstraintKind::Inequality;
    } else {
      throw ParseError("kind: expected \"equality\" or \"inequality\", got " + kind.dump());
    }
    const json& cons = field(doc, "constraints", root);
    if (!cons.is_array() || static_cast<int>(cons.size()) != m) {
      throw ParseError("constraints: expected " + std::to_string(m) + " matrices");
    }
    std::vector<HermitianOperator> ops;
    for (int i = 0; i < m; ++i) {
      ops.push_back(hermitian_from_json(cons[i], dim, "constraints[" + std::to_string(i) + "]"));
    }
    const json& rhs = field(doc, "rhs", root);
    if (!rhs.is_array() || static_cast<int>(rhs.size()) != m) {
      throw ParseError("rhs: expected " + std::to_string(m) + " numbers");
    }
    RealVector b(m);
    for (int i = 0; i < m; ++i) b[i] = number(rhs[i], "rhs[" + std::to_string(i) + "]");
    int slack = 0;
    if (doc.contains("slack_count")) slack = integer(doc["slack_count"], "slack_count");
    out.form = StandardForm{c, DiagonalMap(std::move(ops)), b, k, slack};
  } else {
    throw ParseError("form: expected \"general\" or \"standard\", got \"" + form_name + "\"");
  }

  const json& meta = field(doc, "metadata", root);
  const json& name = field(meta, "name", "metadata");
  const json& generator = field(meta, "generator", "metadata");
  const json& seed = field(meta, "seed", "metadata");
  if (!name.is_string() || !generator.is_string()) throw ParseError("metadata: name/generator must be strings");
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) throw ParseError("metadata.seed: expected an integer");
  out.metadata = {name.get<std::string>(), seed.get<std::uint64_t>(), generator.get<std::string>()};

  if (doc.contains("feasible_witness") && !doc["feasible_witness"].is_null()) {
    out.feasible_witness = matrix_from_json(doc["feasible_witness"], dim, "feasible_witness");
  }
  try {
    out.validate();
  } catch (const DimensionError& e) {
    throw ParseError(std::string("instance: ") + e.what());
  } catch (const FormError& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  return out;
}

void save_instance(const SdpInstance& instance, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << instance_to_json(instance) << '\n';
  if (!os) throw Error("failed writing " + path);
}

SdpInstance load_instance(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  try {
    return instance_from_json(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace vqsdp
