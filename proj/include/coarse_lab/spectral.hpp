#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarse_lab/errors.hpp"
#include "coarse_lab/graph.hpp"
#include "coarse_lab/parallel.hpp"

namespace coarse_lab {

/// Eigenvalues below kZeroTolerance * max(1, largest eigenvalue) count as 0.
inline constexpr double kZeroTolerance = 1e-9;

/// Normalised Laplacian (1/2)(I - A/d) of a d-regular component. Its
/// spectrum lies in [0, 1] and its kernel is the constants on a connected
/// component.
struct Laplacian {
  std::size_t component_index = 0;
  std::size_t degree = 0;
  Eigen::MatrixXd matrix;
};

inline Laplacian laplacian(const Graph& g, std::size_t component_index = 0) {
  const auto d = regular_degree(g);
  if (!d || *d == 0) {
    throw StructuralError("component " + std::to_string(component_index) +
                          " is not regular of positive degree");
  }
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  // d*I - A in exact integers first; every row must sum to zero.
  Eigen::MatrixXi combinatorial = Eigen::MatrixXi::Zero(n, n);
  for (Eigen::Index v = 0; v < n; ++v) combinatorial(v, v) = static_cast<int>(*d);
  for (const auto& [u, v] : g.edges()) {
    combinatorial(u, v) -= 1;
    combinatorial(v, u) -= 1;
  }
  if ((combinatorial.rowwise().sum().array() != 0).any()) {
    throw StructuralError("Laplacian row sums are not zero");
  }
  return {component_index, *d, combinatorial.cast<double>() / (2.0 * static_cast<double>(*d))};
}

inline Laplacian laplacian(const SpaceOfGraphs& x, std::size_t i) { return laplacian(x.component(i), i); }

/// Ascending eigenvalues.
inline Eigen::VectorXd laplacian_spectrum(const Laplacian& l) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l.matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw StructuralError("eigensolver did not converge");
  return solver.eigenvalues();
}

namespace detail {
inline double zero_threshold(const Eigen::VectorXd& ev) {
  return kZeroTolerance * std::max(1.0, ev.size() ? ev.maxCoeff() : 0.0);
}
}  // namespace detail

/// Number of eigenvalues treated as zero.
inline std::size_t kernel_dimension(const Eigen::VectorXd& ascending) {
  const double tol = detail::zero_threshold(ascending);
  std::size_t k = 0;
  while (k < static_cast<std::size_t>(ascending.size()) && ascending[static_cast<Eigen::Index>(k)] <= tol) ++k;
  return k;
}

/// Smallest non-zero eigenvalue. The kernel must be exactly the constants.
inline double spectral_gap(const Eigen::VectorXd& ascending, std::size_t component_index = 0) {
  const std::size_t k = kernel_dimension(ascending);
  if (k != 1) {
    throw StructuralError("component " + std::to_string(component_index) + " has Laplacian kernel of dimension " +
                          std::to_string(k) + "; expected 1 (disconnected?)");
  }
  if (ascending.size() < 2) throw StructuralError("spectral gap of a single vertex is undefined");
  return ascending[1];
}

inline double spectral_gap(const Laplacian& l) { return spectral_gap(laplacian_spectrum(l), l.component_index); }

/// Per-component spectral gaps, computed concurrently.
inline std::vector<double> spectral_gaps(const SpaceOfGraphs& x) {
  std::vector<double> gaps(x.component_count());
  parallel_for(x.component_count(), [&](std::size_t i) { gaps[i] = spectral_gap(laplacian(x, i)); });
  return gaps;
}

enum class Verdict { Pass, Fail };

inline const char* to_string(Verdict v) { return v == Verdict::Pass ? "PASS" : "FAIL"; }

struct ExpanderCertificate {
  std::size_t degree_bound = 0;
  std::vector<std::size_t> sizes;
  std::vector<double> gaps;
  double c = 0.0;  // min gap over the truncation
  double c_min = 0.0;
  Verdict verdict = Verdict::Fail;
  std::string reason;
  std::optional<std::size_t> witness_component;
  std::string normalisation = "(I - A/d)/2";
};

/// PASS iff the truncation has >= 2 components with strictly increasing
/// sizes, all components are regular with a common degree bound, and every
/// spectral gap is at least c_min. A FAIL names the first violated clause
/// and, where there is one, the witness component.
inline ExpanderCertificate certify_expander(const SpaceOfGraphs& x, double c_min) {
  ExpanderCertificate cert;
  cert.c_min = c_min;
  for (const auto& g : x.components()) {
    cert.sizes.push_back(g.vertex_count());
    cert.degree_bound = std::max(cert.degree_bound, max_degree(g));
  }
  cert.gaps = spectral_gaps(x);
  cert.c = cert.gaps.empty() ? 0.0 : *std::min_element(cert.gaps.begin(), cert.gaps.end());

  auto fail = [&](std::string why, std::optional<std::size_t> witness) {
    cert.verdict = Verdict::Fail;
    cert.reason = std::move(why);
    cert.witness_component = witness;
    return cert;
  };
  if (x.component_count() < 2) {
    return fail("need at least two components to witness growing sizes", std::nullopt);
  }
  for (std::size_t i = 1; i < cert.sizes.size(); ++i) {
    if (cert.sizes[i] <= cert.sizes[i - 1]) return fail("sizes not strictly increasing", i);
  }
  for (std::size_t i = 0; i < cert.gaps.size(); ++i) {
    if (cert.gaps[i] < c_min) {
      return fail("spectral gap " + std::to_string(cert.gaps[i]) + " below c_min", i);
    }
  }
  cert.verdict = Verdict::Pass;
  cert.reason = "all clauses hold";
  return cert;
}

}  // namespace coarse_lab
