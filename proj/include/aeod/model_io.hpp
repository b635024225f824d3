#ifndef AEOD_MODEL_IO_HPP
#define AEOD_MODEL_IO_HPP

#include <string>

#include "aeod/detect.hpp"

namespace aeod {

/// Writes a trained model as a JSON document with fields input_dim,
/// hidden_dim, w1, b1, w2, b2 (row-major arrays), normalization {min, max}
/// and loss_config. Finite doubles round-trip bit-exactly.
void save_model(const TrainedModel& model, const std::string& path);

/// Reads a model written by save_model. The training curve is telemetry, not
/// state, so the loaded history is empty.
TrainedModel load_model(const std::string& path);

} // namespace aeod

#endif
