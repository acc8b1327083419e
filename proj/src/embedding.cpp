#include "kshare/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "kshare/error.hpp"
#include "kshare/format.hpp"

namespace kshare {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector multiply(const Matrix& m, std::span<const double> x) {
  if (x.size() != m.cols) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix has " + std::to_string(m.cols) + " columns, vector has " + std::to_string(x.size()));
  }
  Vector y(m.rows, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) acc += m(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

std::string_view to_string(Activation a) noexcept {
  switch (a) {
    case Activation::ReLU: return "relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Identity: return "identity";
  }
  return "unknown";
}

Activation parse_activation(std::string_view name) {
  if (name == "relu") return Activation::ReLU;
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "identity") return Activation::Identity;
  throw Error(ErrorCode::InvalidConfig, "unknown activation '" + std::string(name) + "'");
}

double activate(Activation a, double x) noexcept {
  switch (a) {
    case Activation::ReLU: return x > 0.0 ? x : 0.0;
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
    case Activation::Identity: return x;
  }
  return x;
}

void EmbeddingConfig::validate() const {
  if (dimension < 2) throw Error(ErrorCode::InvalidConfig, "embedding dimension must be >= 2");
  if (rounds < 1) throw Error(ErrorCode::InvalidConfig, "embedding rounds must be >= 1");
}

SageLayer init_layer(std::size_t k_in, std::size_t k_out, RngSeed seed, Activation activation) {
  if (k_in < 1 || k_out < 1) throw Error(ErrorCode::InvalidConfig, "layer dimensions must be >= 1");
  const double bound = std::sqrt(6.0 / static_cast<double>(k_in + k_out));
  SageLayer layer{Matrix(k_out, k_in), activation, Aggregator::Mean};
  Rng rng(seed);
  for (auto& w : layer.weights.data) w = rng.uniform(-bound, bound);
  return layer;
}

EmbeddingModel make_model(const EmbeddingConfig& config, std::size_t feature_dim) {
  config.validate();
  return {init_layer(feature_dim, config.dimension, derive_seed(config.weight_seed, 1), config.activation),
          init_layer(config.dimension, config.dimension, derive_seed(config.weight_seed, 2), config.activation)};
}

Embedding aggregate(std::span<const Embedding> vectors) {
  if (vectors.empty()) throw Error(ErrorCode::EmptyInput, "aggregate needs at least one vector");
  const std::size_t dim = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != dim) throw Error(ErrorCode::DimensionMismatch, "aggregate inputs differ in dimension");
  }

  std::vector<const Embedding*> order;
  order.reserve(vectors.size());
  for (const auto& v : vectors) order.push_back(&v);
  std::sort(order.begin(), order.end(), [](const Embedding* a, const Embedding* b) { return *a < *b; });

  Embedding mean(dim, 0.0);
  for (const Embedding* v : order)
    for (std::size_t i = 0; i < dim; ++i) mean[i] += (*v)[i];
  const double count = static_cast<double>(vectors.size());
  for (auto& x : mean) x /= count;
  return mean;
}

double l2_norm(std::span<const double> v) noexcept {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

double l2_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "distance between vectors of unequal size");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

Embedding normalize(std::span<const double> v) {
  const double norm = l2_norm(v);
  if (norm == 0.0 || !std::isfinite(norm)) {
    throw Error(ErrorCode::ZeroVector, "cannot normalize a zero (or non-finite) vector");
  }
  Embedding out(v.begin(), v.end());
  for (auto& x : out) x /= norm;
  return out;
}

Embedding transform(const SageLayer& layer, std::span<const double> x) {
  Vector pre = multiply(layer.weights, x);
  for (auto& value : pre) value = activate(layer.activation, value);
  return normalize(pre);
}

Embedding layer_forward(const SageLayer& layer, const Embedding& self_vec, std::span<const Embedding> neighbor_vecs) {
  if (self_vec.size() != layer.in_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "self vector does not match layer input dimension");
  }
  std::vector<Embedding> pool;
  pool.reserve(neighbor_vecs.size() + 1);
  pool.push_back(self_vec);
  pool.insert(pool.end(), neighbor_vecs.begin(), neighbor_vecs.end());
  return transform(layer, aggregate(pool));
}

namespace {

void check_features(const KnowledgeGraph& kg, const EmbeddingMap& features) {
  if (features.size() != kg.node_count()) {
    throw Error(ErrorCode::NodeSetMismatch, "feature map does not cover exactly the graph's nodes");
  }
  std::size_t dim = 0;
  for (const auto& [id, vec] : features) {
    if (!kg.contains(id)) throw Error(ErrorCode::NodeSetMismatch, "feature for unknown node " + id);
    if (dim == 0) dim = vec.size();
    if (vec.size() != dim) throw Error(ErrorCode::DimensionMismatch, "feature vectors differ in dimension");
  }
}

EmbeddingMap propagate(const KnowledgeGraph& kg, const EmbeddingMap& previous, const SageLayer& layer) {
  EmbeddingMap next;
  std::vector<Embedding> gathered;
  for (const auto& [id, self_vec] : previous) {
    gathered.clear();
    for (const auto& u : kg.neighbors(id)) gathered.push_back(previous.at(u));
    next.emplace(id, layer_forward(layer, self_vec, gathered));
  }
  return next;
}

}  // namespace

std::vector<EmbeddingMap> embed_graph_rounds(const KnowledgeGraph& kg, const EmbeddingMap& features,
                                             const EmbeddingModel& model, std::size_t rounds) {
  if (rounds < 1) throw Error(ErrorCode::InvalidConfig, "embedding rounds must be >= 1");
  check_features(kg, features);

  std::vector<EmbeddingMap> history;
  history.reserve(rounds);
  history.push_back(propagate(kg, features, model.input));
  for (std::size_t l = 1; l < rounds; ++l) history.push_back(propagate(kg, history.back(), model.hidden));
  return history;
}

EmbeddingMap embed_graph(const KnowledgeGraph& kg, const EmbeddingMap& features, const EmbeddingModel& model,
                         std::size_t rounds) {
  return std::move(embed_graph_rounds(kg, features, model, rounds).back());
}

EmbeddingMap embed_graph(const KnowledgeGraph& kg, const EmbeddingMap& features, const EmbeddingConfig& config) {
  if (features.empty()) return {};
  const auto model = make_model(config, features.begin()->second.size());
  return embed_graph(kg, features, model, config.rounds);
}

void write_embedding_csv(std::ostream& out, std::span<const EmbeddingSnapshot> snapshots) {
  std::size_t dim = 0;
  for (const auto& s : snapshots)
    if (!s.embeddings.empty()) {
      dim = s.embeddings.begin()->second.size();
      break;
    }
  out << "node_id,round";
  for (std::size_t i = 0; i < dim; ++i) out << ",e" << i;
  out << '\n';
  for (const auto& s : snapshots) {
    for (const auto& [id, e] : s.embeddings) {
      if (e.size() != dim) throw Error(ErrorCode::DimensionMismatch, "embedding snapshot dimensions differ");
      out << id << ',' << s.round;
      for (double x : e) out << ',' << format_real(x);
      out << '\n';
    }
  }
}

}  // namespace kshare
