#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcm/encoding.hpp"
#include "bcm/folds.hpp"
#include "bcm/network.hpp"

namespace bcm {

enum class Optimizer { kSgd, kMomentum };

struct TrainConfig {
  std::size_t epochs = 200;
  std::size_t batch_size = 32;
  double learning_rate = 0.01;
  Optimizer optimizer = Optimizer::kMomentum;
  double momentum = 0.9;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Non-finite loss during training.
class TrainingError : public std::runtime_error {
 public:
  TrainingError(std::size_t epoch, std::size_t batch, const std::string& what)
      : std::runtime_error(what), epoch_(epoch), batch_(batch) {}
  std::size_t epoch() const { return epoch_; }
  std::size_t batch() const { return batch_; }

 private:
  std::size_t epoch_;
  std::size_t batch_;
};

/// Minibatch gradient descent on mean binary cross-entropy. The shuffle
/// order is drawn from cfg.seed, so (net, data, cfg) fixes the result.
/// When `epoch_losses` is given it receives the full-data loss before
/// training followed by the loss after every epoch.
Network train(const Network& net, const EncodedDataset& data, const TrainConfig& cfg,
              std::vector<double>* epoch_losses = nullptr);

struct EvalResult {
  double accuracy = 0.0;
  std::size_t n_correct = 0;
  std::size_t n_total = 0;
};

/// Predicts class 1 when the output is >= 0.5.
EvalResult evaluate(const Network& net, const EncodedDataset& data);

struct CrossValidation {
  double mean_accuracy = 0.0;
  std::vector<EvalResult> per_fold;
  Network final_net;  // trained on every row with seed cfg.seed + k
};

/// Fold i initialises and shuffles with seed cfg.seed + i and is evaluated
/// on its held-out rows. Folds run on up to `threads` workers; the result
/// does not depend on the thread count.
CrossValidation cross_validate(const NetworkStructure& structure, const EncodedDataset& data,
                               const FoldAssignment& folds, const TrainConfig& cfg, std::size_t threads = 1);

}  // namespace bcm
