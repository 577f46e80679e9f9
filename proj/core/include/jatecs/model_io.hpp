#pragma once

#include <filesystem>
#include <string>

#include "jatecs/learners.hpp"
#include "jatecs/projection.hpp"

namespace jatecs {

// A model directory holds
//   model.bin       portable binary payload (parameters, thresholds, domain, model)
//   model-meta.tsv  learner kind, hyperparameters and category labels, readable
//   features.tsv    fID, featureText of the training feature space
void save_model(const TrainedClassifier& classifier, const std::filesystem::path& directory);
TrainedClassifier load_model(const std::filesystem::path& directory);

// Portable binary encodings; equal objects give equal bytes.
std::string serialize_classifier(const TrainedClassifier& classifier);
std::string serialize_projection(const ProjectionModel& model);
ProjectionModel deserialize_projection(const std::string& bytes, std::shared_ptr<const FeatureDb> features);

}  // namespace jatecs
