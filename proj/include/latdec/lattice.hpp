#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "latdec/exact.hpp"
#include "latdec/ring.hpp"

namespace latdec {

/// Where a cached figure of merit came from.
enum class Provenance { Exact, Asserted };

std::string_view provenance_name(Provenance p);

template <class T>
struct Known {
  T value;
  Provenance provenance;
};

/// Real lattice with exact generator (rows are basis vectors) and cached
/// Gram matrix and squared volume. Immutable; copies share storage.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  explicit LatticeBasis(ExactMatrix generator, std::string name = {});
  static LatticeBasis from_complex(const ComplexBasis& basis, std::string name = {});

  std::size_t dim() const { return data_->generator.rows(); }
  const std::string& name() const { return data_->name; }
  const ExactMatrix& generator() const { return data_->generator; }
  const Eigen::MatrixXd& generator_d() const { return data_->generator_d; }
  const ExactMatrix& gram() const { return data_->gram; }
  const QSqrt7& volume_sq() const { return data_->volume_sq; }
  double volume() const;
  const std::optional<ComplexBasis>& complex_basis() const { return data_->complex; }

  /// Gram matrix scaled to integers, when it is rational and the scaled
  /// entries fit in 64 bits: gram = integer_gram / gram_denominator.
  bool has_integer_gram() const { return data_->int_gram_denom > 0; }
  const std::vector<std::int64_t>& integer_gram() const { return data_->int_gram; }
  std::int64_t gram_denominator() const { return data_->int_gram_denom; }

  bool is_integral() const;
  bool is_even() const;

  const std::optional<Known<QSqrt7>>& min_sq_norm() const { return min_sq_norm_; }
  const std::optional<Known<std::uint64_t>>& kissing() const { return kissing_; }
  const std::optional<double>& covering_radius() const { return covering_radius_; }
  double min_sq_norm_d() const;
  double packing_radius_sq() const { return min_sq_norm_d() / 4.0; }
  double coding_gain() const;
  double coding_gain_db() const;

  LatticeBasis with_name(std::string name) const;
  LatticeBasis with_min_sq_norm(QSqrt7 d, Provenance p) const;
  LatticeBasis with_kissing(std::uint64_t tau, Provenance p) const;
  LatticeBasis with_covering_radius(double r) const;
  LatticeBasis with_complex(ComplexBasis basis) const;

 private:
  struct Data {
    std::string name;
    ExactMatrix generator;
    Eigen::MatrixXd generator_d;
    ExactMatrix gram;
    QSqrt7 volume_sq;
    std::optional<ComplexBasis> complex;
    std::vector<std::int64_t> int_gram;
    std::int64_t int_gram_denom = 0;
  };
  std::shared_ptr<Data> data_;
  std::optional<Known<QSqrt7>> min_sq_norm_;
  std::optional<Known<std::uint64_t>> kissing_;
  std::optional<double> covering_radius_;
};

/// theta * Lambda generated by G * R(n, theta).
LatticeBasis scale_rotate(const LatticeBasis& lattice, RingTag tag, const RingElement& theta);

/// Integer-multiple scaling c * Lambda.
LatticeBasis scale_lattice(const LatticeBasis& lattice, const QSqrt7& c);

bool same_lattice(const LatticeBasis& a, const LatticeBasis& b);
bool lattice_contains(const LatticeBasis& super, const LatticeBasis& sub);

/// Exact squared norm of z * G using the Gram matrix.
QSqrt7 exact_sq_norm(const LatticeBasis& lattice, const std::vector<long>& z);

}  // namespace latdec
