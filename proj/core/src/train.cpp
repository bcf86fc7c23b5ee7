#include "bcm/train.hpp"

#include <cmath>
#include <numeric>

#include "bcm/parallel.hpp"
#include "bcm/random.hpp"

namespace bcm {

namespace {

void require_both_classes(const Eigen::VectorXd& labels, const char* what) {
  bool has0 = false;
  bool has1 = false;
  for (Eigen::Index r = 0; r < labels.size(); ++r) (labels(r) >= 0.5 ? has1 : has0) = true;
  if (!has0 || !has1) throw std::invalid_argument(std::string(what) + " contains only one class");
}

}  // namespace

void TrainConfig::validate() const {
  if (batch_size == 0) throw std::invalid_argument("batch_size must be positive");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw std::invalid_argument("learning_rate must be positive");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw std::invalid_argument("momentum must lie in [0, 1)");
}

Network train(const Network& net, const EncodedDataset& data, const TrainConfig& cfg,
              std::vector<double>* epoch_losses) {
  cfg.validate();
  if (data.columns() != net.structure.input_size())
    throw ShapeError("dataset has " + std::to_string(data.columns()) + " columns, network expects " +
                     std::to_string(net.structure.input_size()));
  require_both_classes(data.labels, "training data");

  Network model = net;
  if (epoch_losses) {
    epoch_losses->clear();
    epoch_losses->push_back(loss_and_gradients(model, data.matrix, data.labels, nullptr));
  }
  if (cfg.epochs == 0) return model;

  const auto n = data.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(cfg.seed, 0x7368756666));  // "shuff"

  Gradients grads = Gradients::zeros_like(model);
  Gradients velocity = Gradients::zeros_like(model);
  const bool use_momentum = cfg.optimizer == Optimizer::kMomentum;
  Eigen::MatrixXd batch_x;
  Eigen::VectorXd batch_y;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order.begin(), order.end());
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < n; start += cfg.batch_size, ++batch_index) {
      const std::size_t len = std::min(cfg.batch_size, n - start);
      batch_x.resize(static_cast<Eigen::Index>(len), data.matrix.cols());
      batch_y.resize(static_cast<Eigen::Index>(len));
      for (std::size_t i = 0; i < len; ++i) {
        const auto src = static_cast<Eigen::Index>(order[start + i]);
        batch_x.row(static_cast<Eigen::Index>(i)) = data.matrix.row(src);
        batch_y(static_cast<Eigen::Index>(i)) = data.labels(src);
      }
      const double loss = loss_and_gradients(model, batch_x, batch_y, &grads);
      if (!std::isfinite(loss))
        throw TrainingError(epoch, batch_index,
                            "non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                                std::to_string(batch_index));
      for (std::size_t l = 0; l < model.weights.size(); ++l) {
        if (use_momentum) {
          velocity.weights[l] = cfg.momentum * velocity.weights[l] - cfg.learning_rate * grads.weights[l];
          velocity.biases[l] = cfg.momentum * velocity.biases[l] - cfg.learning_rate * grads.biases[l];
          model.weights[l] += velocity.weights[l];
          model.biases[l] += velocity.biases[l];
        } else {
          model.weights[l] -= cfg.learning_rate * grads.weights[l];
          model.biases[l] -= cfg.learning_rate * grads.biases[l];
        }
      }
    }
    if (epoch_losses) epoch_losses->push_back(loss_and_gradients(model, data.matrix, data.labels, nullptr));
  }
  return model;
}

EvalResult evaluate(const Network& net, const EncodedDataset& data) {
  if (data.rows() == 0) throw std::invalid_argument("evaluate: empty dataset");
  const Eigen::VectorXd p = predict(net, data.matrix);
  EvalResult result;
  result.n_total = data.rows();
  for (Eigen::Index r = 0; r < p.size(); ++r) {
    const double predicted = p(r) >= 0.5 ? 1.0 : 0.0;
    if (predicted == data.labels(r)) ++result.n_correct;
  }
  result.accuracy = static_cast<double>(result.n_correct) / static_cast<double>(result.n_total);
  return result;
}

CrossValidation cross_validate(const NetworkStructure& structure, const EncodedDataset& data,
                               const FoldAssignment& folds, const TrainConfig& cfg, std::size_t threads) {
  structure.validate();
  cfg.validate();
  if (folds.rows() != data.rows())
    throw std::invalid_argument("fold assignment covers " + std::to_string(folds.rows()) +
                                " rows, dataset has " + std::to_string(data.rows()));
  if (structure.input_size() != data.columns())
    throw ShapeError("structure expects " + std::to_string(structure.input_size()) + " inputs, dataset has " +
                     std::to_string(data.columns()) + " columns");

  const std::size_t k = folds.k;
  std::vector<EncodedDataset> train_sets;
  std::vector<EncodedDataset> test_sets;
  for (std::size_t fold = 0; fold < k; ++fold) {
    train_sets.push_back(data.select_rows(folds.rows_not_in(fold)));
    test_sets.push_back(data.select_rows(folds.rows_in(fold)));
    require_both_classes(train_sets.back().labels, ("training fold " + std::to_string(fold)).c_str());
  }

  CrossValidation cv;
  cv.per_fold.resize(k);
  // Slot k is the full-data model.
  parallel_for(k + 1, threads, [&](std::size_t job) {
    TrainConfig fold_cfg = cfg;
    fold_cfg.seed = cfg.seed + job;
    Network init = init_network(structure, fold_cfg.seed);
    if (job == k) {
      cv.final_net = train(init, data, fold_cfg);
    } else {
      cv.per_fold[job] = evaluate(train(init, train_sets[job], fold_cfg), test_sets[job]);
    }
  });
  double sum = 0.0;
  for (const auto& r : cv.per_fold) sum += r.accuracy;
  cv.mean_accuracy = sum / static_cast<double>(k);
  return cv;
}

}  // namespace bcm
