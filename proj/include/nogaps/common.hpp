#pragma once

#include <Eigen/Dense>
#include <complex>

namespace nogaps {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Scalar field of an ensemble or sphere. Real-field objects are stored in
/// complex containers with imaginary parts exactly zero.
enum class Field { Real, Complex };

inline const char* field_name(Field f) { return f == Field::Real ? "real" : "complex"; }

}  // namespace nogaps
