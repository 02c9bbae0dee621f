#include "sonar/nn/train.hpp"

#include <fstream>
#include <sstream>

namespace sonar::nn {

void validate(const TrainConfig& cfg) {
    if (cfg.learning_rate < 0.0)
        throw std::invalid_argument("TrainConfig: learning rate must be >= 0");
    if (cfg.epochs < 1) throw std::invalid_argument("TrainConfig: epochs must be >= 1");
    if (cfg.batch_size < 1)
        throw std::invalid_argument("TrainConfig: batch size must be >= 1");
    if (cfg.gaussian_copies < 0)
        throw std::invalid_argument("TrainConfig: augmentation copies must be >= 0");
    if (cfg.gaussian_variance <= 0.0)
        throw std::invalid_argument("TrainConfig: augmentation variance must be > 0");
}

void write_history_csv(const std::string& path, const TrainHistory& h) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("write_history_csv: cannot open '" + path + "' for writing");
    out << "epoch,train_loss,train_acc,val_loss,val_acc\n";
    for (const auto& e : h.epochs) {
        std::ostringstream row;
        row.precision(10);
        row << e.epoch << ',' << e.train_loss << ',' << e.train_acc << ',';
        if (e.val_loss) row << *e.val_loss;
        row << ',';
        if (e.val_acc) row << *e.val_acc;
        out << row.str() << '\n';
    }
    if (!out) throw DataError("write_history_csv: short write to '" + path + "'");
}

}  // namespace sonar::nn
