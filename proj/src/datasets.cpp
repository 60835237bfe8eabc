#include "datasets.hpp"

namespace betagof {

const std::vector<double>& dataset_may2007() {
  static const std::vector<double> data = {
      0.40, 0.44, 0.50, 0.55, 0.58, 0.62, 0.65, 0.69, 0.72, 0.72, 0.73,
      0.75, 0.77, 0.80, 0.81, 0.81, 0.83, 0.83, 0.85, 0.85, 0.85, 0.85,
      0.86, 0.86, 0.87, 0.87, 0.89, 0.92, 0.94, 0.94, 0.97};
  return data;
}

const std::vector<double>& dataset_may2008() {
  static const std::vector<double> data = {
      0.39, 0.40, 0.42, 0.43, 0.43, 0.43, 0.44, 0.46, 0.48, 0.49, 0.51,
      0.52, 0.53, 0.54, 0.56, 0.59, 0.62, 0.64, 0.66, 0.73, 0.75, 0.76,
      0.83, 0.85, 0.88, 0.91, 0.92, 0.92, 0.95, 0.97, 0.98};
  return data;
}

const std::vector<double>* dataset_by_name(const std::string& name) {
  if (name == "may2007") return &dataset_may2007();
  if (name == "may2008") return &dataset_may2008();
  return nullptr;
}

}  // namespace betagof
