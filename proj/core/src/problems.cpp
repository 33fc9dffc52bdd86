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

#include "vqsdp/problems.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vqsdp/errors.hpp"
#include "vqsdp/rng.hpp"

namespace vqsdp {

namespace {

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

Matrix unit_hermitian(int dim, Rng& rng) {
  const Matrix g = gaussian_matrix(dim, dim, rng);
  Matrix h = 0.5 * (g + g.adjoint());
  const double norm = HermitianOperator(h).spectral_norm();
  if (norm > 0.0) h /= norm;
  return h;
}

// G G† + 0.1 I scaled to the requested trace.
Matrix random_density(int dim, double trace, Rng& rng) {
  const Matrix g = gaussian_matrix(dim, dim, rng);
  Matrix x = g * g.adjoint() + 0.1 * Matrix::Identity(dim, dim);
  x = 0.5 * (x + x.adjoint());
  return x * (trace / x.trace().real());
}

void require_power_of_two(int dim, const char* what) {
  if (!is_power_of_two(dim)) {
    throw DimensionError(std::string(what) + " " + std::to_string(dim) + " is not a power of two");
  }
}

}  // namespace

const GeneralForm& SdpInstance::general() const {
  if (!is_general()) throw FormError("instance is in standard form");
  return std::get<GeneralForm>(form);
}

const StandardForm& SdpInstance::standard() const {
  if (is_general()) throw FormError("instance is in general form");
  return std::get<StandardForm>(form);
}

int SdpInstance::dim() const {
  return std::visit([](const auto& f) { return f.c.dim(); }, form);
}

int SdpInstance::num_constraints() const {
  if (is_general()) return general().b_op.dim();
  return standard().constraints.num_constraints();
}

void SdpInstance::validate() const {
  const int n = dim();
  require_power_of_two(n, "dimension");
  if (is_general()) {
    const auto& g = general();
    require_power_of_two(g.b_op.dim(), "output dimension");
    if (g.choi.in_dim() != n || g.choi.out_dim() != g.b_op.dim()) {
      throw DimensionError("Choi matrix shape does not match C and B");
    }
    if (!g.choi.is_hermitian()) throw HermiticityError("Choi matrix is not Hermitian");
    return;
  }
  const auto& s = standard();
  const int m = s.constraints.num_constraints();
  if (s.constraints.dim() != n) throw DimensionError("constraint operators do not match C");
  if (s.rhs.size() != m) throw DimensionError("rhs length does not match the constraint count");
  if (!(s.constraints.op(m - 1) == HermitianOperator::identity(n))) {
    throw FormError("last constraint must be the trace constraint A_M = I");
  }
  if (!(s.trace_bound() > 0.0)) throw FormError("trace bound b_M must be positive");
  if (s.slack_count != 0 && s.slack_count != m) throw FormError("slack_count must be 0 or M");
  if (s.slack_count != 0 && s.kind != ConstraintKind::Equality) {
    throw FormError("slack variables only appear in equality form");
  }
}

bool operator==(const SdpInstance& a, const SdpInstance& b) {
  if (a.is_general() != b.is_general()) return false;
  if (a.metadata.name != b.metadata.name || a.metadata.seed != b.metadata.seed ||
      a.metadata.generator != b.metadata.generator) {
    return false;
  }
  if (a.feasible_witness.has_value() != b.feasible_witness.has_value()) return false;
  if (a.feasible_witness && !same_entries(*a.feasible_witness, *b.feasible_witness)) return false;
  if (a.is_general()) {
    const auto& x = a.general();
    const auto& y = b.general();
    return x.c == y.c && x.choi == y.choi && x.b_op == y.b_op;
  }
  const auto& x = a.standard();
  const auto& y = b.standard();
  return x.c == y.c && x.constraints == y.constraints && x.rhs.size() == y.rhs.size() &&
         (x.rhs.array() == y.rhs.array()).all() && x.kind == y.kind && x.slack_count == y.slack_count;
}

Graph Graph::path(int vertices) {
  Graph g{vertices, {}};
  for (int i = 0; i + 1 < vertices; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

Graph Graph::cycle(int vertices) {
  Graph g = path(vertices);
  if (vertices >= 3) g.edges.emplace_back(vertices - 1, 0);
  return g;
}

Graph Graph::complete(int vertices) {
  Graph g{vertices, {}};
  for (int i = 0; i < vertices; ++i) {
    for (int j = i + 1; j < vertices; ++j) g.edges.emplace_back(i, j);
  }
  return g;
}

Graph Graph::random(int vertices, double edge_probability, std::uint64_t seed) {
  Rng rng(seed);
  std::bernoulli_distribution keep(edge_probability);
  Graph g{vertices, {}};
  for (int i = 0; i < vertices; ++i) {
    for (int j = i + 1; j < vertices; ++j) {
      if (keep(rng)) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

void Graph::validate() const {
  if (num_vertices < 2) throw ParamError("graph needs at least 2 vertices");
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= num_vertices || j >= num_vertices) {
      throw ParamError("edge (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
    }
    if (i == j) throw ParamError("self loops are not allowed");
    if (!seen.insert(std::minmax(i, j)).second) throw ParamError("duplicate edge");
  }
}

RealMatrix Graph::laplacian() const {
  RealMatrix l = RealMatrix::Zero(num_vertices, num_vertices);
  for (auto [i, j] : edges) {
    l(i, i) += 1.0;
    l(j, j) += 1.0;
    l(i, j) -= 1.0;
    l(j, i) -= 1.0;
  }
  return l;
}

int padded_dim(int n) {
  int d = 2;
  while (d < n) d *= 2;
  return d;
}

namespace {

HermitianOperator maxcut_objective(const Graph& graph, int n) {
  Matrix c = Matrix::Zero(n, n);
  c.topLeftCorner(graph.num_vertices, graph.num_vertices) = (graph.laplacian() / 4.0).cast<Complex>();
  return HermitianOperator(std::move(c));
}

}  // namespace

SdpInstance maxcut_sdp(const Graph& graph) {
  graph.validate();
  const int n = padded_dim(graph.num_vertices);
  std::vector<HermitianOperator> ops;
  ops.reserve(n + 1);
  for (int i = 0; i < n; ++i) ops.push_back(HermitianOperator::projector(n, i));
  ops.push_back(HermitianOperator::identity(n));
  RealVector rhs = RealVector::Ones(n + 1);
  rhs[n] = n;

  SdpInstance out;
  out.form = StandardForm{maxcut_objective(graph, n), DiagonalMap(std::move(ops)), rhs,
                          ConstraintKind::Equality, 0};
  out.metadata = {"maxcut-v" + std::to_string(graph.num_vertices) + "-e" + std::to_string(graph.edges.size()),
                  0, "maxcut"};
  out.feasible_witness = Matrix::Identity(n, n);
  return out;
}

SdpInstance maxcut_general(const Graph& graph) {
  graph.validate();
  const int n = padded_dim(graph.num_vertices);
  ChoiMatrix choi = choi_of_map(
      [n](int i, int j) {
        Matrix out = Matrix::Zero(n, n);
        if (i == j) out(i, i) = 1.0;
        return out;
      },
      n);
  SdpInstance out;
  out.form = GeneralForm{maxcut_objective(graph, n), std::move(choi), HermitianOperator::identity(n)};
  out.metadata = {"maxcut-general-v" + std::to_string(graph.num_vertices) + "-e" +
                      std::to_string(graph.edges.size()),
                  0, "maxcut-general"};
  out.feasible_witness = Matrix::Identity(n, n);
  return out;
}

Matrix random_hermitian(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return unit_hermitian(dim, rng);
}

SdpInstance random_feasible_standard(int dim, int num_constraints, ConstraintKind kind, std::uint64_t seed,
                                     const RandomStandardOptions& options) {
  require_power_of_two(dim, "dimension");
  if (num_constraints < 2) throw ParamError("need at least 2 constraints (one is the trace constraint)");
  if (!(options.trace > 0.0)) throw ParamError("trace must be positive");
  Rng rng(seed);
  const Matrix x0 = random_density(dim, options.trace, rng);

  std::vector<HermitianOperator> ops;
  RealVector rhs(num_constraints);
  for (int i = 0; i + 1 < num_constraints; ++i) {
    ops.emplace_back(unit_hermitian(dim, rng));
    rhs[i] = ops.back().trace_product(x0);
  }
  ops.push_back(HermitianOperator::identity(dim));
  rhs[num_constraints - 1] = options.trace;

  if (kind == ConstraintKind::Inequality) {
    std::normal_distribution<double> slack(0.0, 0.1);
    for (int i = 0; i + 1 < num_constraints; ++i) rhs[i] += std::abs(slack(rng));
  }

  Matrix c = unit_hermitian(dim, rng);
  if (options.aligned_objective) c = x0 / HermitianOperator(x0).spectral_norm();

  SdpInstance out;
  out.form = StandardForm{HermitianOperator(std::move(c)), DiagonalMap(std::move(ops)), rhs, kind, 0};
  const std::string tag = kind == ConstraintKind::Equality ? "random-eq" : "random-ineq";
  out.metadata = {tag + "-n" + std::to_string(dim) + "-m" + std::to_string(num_constraints) + "-s" +
                      std::to_string(seed) + (options.aligned_objective ? "-aligned" : ""),
                  seed, tag + (options.aligned_objective ? "/aligned" : "")};
  out.feasible_witness = x0;
  return out;
}

SdpInstance random_general(int dim, int out_dim, std::uint64_t seed) {
  require_power_of_two(dim, "dimension");
  require_power_of_two(out_dim, "output dimension");
  Rng rng(seed);
  WeightedKrausMap map;
  const int rank = std::max(2, dim / out_dim + 1);
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  for (int k = 0; k < rank; ++k) {
    map.weights.push_back(weight(rng));
    map.operators.push_back(gaussian_matrix(out_dim, dim, rng) / std::sqrt(static_cast<double>(dim)));
  }
  const Matrix x0 = random_density(dim, 1.0, rng);
  Matrix b = map.apply(x0) + 0.1 * Matrix::Identity(out_dim, out_dim);
  b = 0.5 * (b + b.adjoint());
  Matrix c = unit_hermitian(dim, rng);

  SdpInstance out;
  out.form = GeneralForm{HermitianOperator(std::move(c)), map.choi(), HermitianOperator(std::move(b))};
  out.metadata = {"random-general-n" + std::to_string(dim) + "-m" + std::to_string(out_dim) + "-s" +
                      std::to_string(seed),
                  seed, "random-general"};
  out.feasible_witness = x0;
  return out;
}

SdpInstance slack_reduce(const SdpInstance& instance) {
  const StandardForm& s = instance.standard();
  if (s.kind != ConstraintKind::Inequality) {
    throw FormError("slack_reduce expects an inequality instance");
  }
  SdpInstance out = instance;
  StandardForm& reduced = std::get<StandardForm>(out.form);
  reduced.kind = ConstraintKind::Equality;
  reduced.slack_count = s.constraints.num_constraints();
  out.metadata.name += "-slack";
  return out;
}

RealVector slack_of(const StandardForm& form, const Matrix& x) { return form.rhs - form.constraints.apply(x); }

double constraint_violation(const SdpInstance& instance, const Matrix& x) {
  if (x.rows() != instance.dim() || x.cols() != instance.dim()) {
    throw DimensionError("operand does not match the instance dimension");
  }
  const Matrix xh = 0.5 * (x + x.adjoint());
  double worst = std::max(0.0, -min_eigenvalue(HermitianOperator(xh)));
  if (instance.is_general()) {
    const auto& g = instance.general();
    const Matrix gap = apply_via_choi(g.choi, xh) - g.b_op.matrix();
    return std::max(worst, max_eigenvalue(HermitianOperator(0.5 * (gap + gap.adjoint()))));
  }
  const auto& s = instance.standard();
  const RealVector z = slack_of(s, xh);
  if (s.kind == ConstraintKind::Equality && s.slack_count == 0) return std::max(worst, z.cwiseAbs().maxCoeff());
  return std::max(worst, std::max(0.0, -z.minCoeff()));
}

}  // namespace vqsdp
