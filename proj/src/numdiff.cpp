#include "hslink/numdiff.hpp"

namespace hslink::numdiff {

Eigen::VectorXd partial(const VectorField& f, const Eigen::VectorXd& t, int i,
                        double h) {
  Eigen::VectorXd tp = t, tm = t;
  tp(i) += h;
  tm(i) -= h;
  return (f(tp) - f(tm)) / (2 * h);
}

double partial_scalar(const std::function<double(const Eigen::VectorXd&)>& f,
                      const Eigen::VectorXd& t, int i, double h) {
  Eigen::VectorXd tp = t, tm = t;
  tp(i) += h;
  tm(i) -= h;
  return (f(tp) - f(tm)) / (2 * h);
}

}  // namespace hslink::numdiff
