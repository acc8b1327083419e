#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "kshare/graph.hpp"
#include "kshare/rng.hpp"

namespace kshare {

using Vector = std::vector<double>;
using Embedding = Vector;
using EmbeddingMap = std::map<NodeId, Embedding>;

/// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  bool operator==(const Matrix&) const = default;
};

Vector multiply(const Matrix& m, std::span<const double> x);

enum class Activation { ReLU, Sigmoid, Identity };
enum class Aggregator { Mean };

std::string_view to_string(Activation a) noexcept;
Activation parse_activation(std::string_view name);

double activate(Activation a, double x) noexcept;

struct SageLayer {
  Matrix weights;  // k_out x k_in
  Activation activation = Activation::Sigmoid;
  Aggregator aggregator = Aggregator::Mean;

  std::size_t in_dim() const noexcept { return weights.cols; }
  std::size_t out_dim() const noexcept { return weights.rows; }

  bool operator==(const SageLayer&) const = default;
};

inline constexpr std::size_t kDefaultDimension = 8;
inline constexpr std::size_t kDefaultRounds = 2;
inline constexpr Activation kDefaultActivation = Activation::Sigmoid;

struct EmbeddingConfig {
  std::size_t dimension = kDefaultDimension;  // k
  std::size_t rounds = kDefaultRounds;        // L
  Activation activation = kDefaultActivation;
  Aggregator aggregator = Aggregator::Mean;
  RngSeed weight_seed = 42;

  void validate() const;
};

/// Glorot-uniform weights in [-a, a], a = sqrt(6 / (k_in + k_out)).
SageLayer init_layer(std::size_t k_in, std::size_t k_out, RngSeed seed,
                     Activation activation = kDefaultActivation);

/// The two weight sets a GraphSAGE stack needs: the input layer maps raw
/// features to k dimensions, the hidden layer is shared by every later round.
/// Build one directly to plug in externally trained weights.
struct EmbeddingModel {
  SageLayer input;
  SageLayer hidden;
};

EmbeddingModel make_model(const EmbeddingConfig& config, std::size_t feature_dim);

/// Component-wise mean. Inputs are summed in lexicographic value order, so the
/// result is bitwise independent of input order.
Embedding aggregate(std::span<const Embedding> vectors);

/// Throws ZeroVector for an all-zero input.
Embedding normalize(std::span<const double> v);

double l2_norm(std::span<const double> v) noexcept;
double l2_distance(std::span<const double> a, std::span<const double> b);

/// normalize(sigma(U * x))
Embedding transform(const SageLayer& layer, std::span<const double> x);

/// normalize(sigma(U * mean(neighbor_vecs + {self_vec})))
Embedding layer_forward(const SageLayer& layer, const Embedding& self_vec,
                        std::span<const Embedding> neighbor_vecs);

/// Synchronous L-round embedding of every node. Round 1 uses model.input,
/// rounds 2..L model.hidden. Returns one snapshot per round (index 0 = round 1).
std::vector<EmbeddingMap> embed_graph_rounds(const KnowledgeGraph& kg, const EmbeddingMap& features,
                                             const EmbeddingModel& model, std::size_t rounds);

EmbeddingMap embed_graph(const KnowledgeGraph& kg, const EmbeddingMap& features, const EmbeddingConfig& config);
EmbeddingMap embed_graph(const KnowledgeGraph& kg, const EmbeddingMap& features, const EmbeddingModel& model,
                         std::size_t rounds);

struct EmbeddingSnapshot {
  std::size_t round;
  EmbeddingMap embeddings;
};

/// CSV with header node_id,round,e0..e{k-1}.
void write_embedding_csv(std::ostream& out, std::span<const EmbeddingSnapshot> snapshots);

}  // namespace kshare
