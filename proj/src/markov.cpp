#include "coinguess/markov.hpp"

#include <cmath>
#include <stdexcept>

namespace coinguess {

namespace {

// Dense Gaussian elimination with partial pivoting; sizes here are tiny.
std::vector<double> solve_linear(std::vector<std::vector<double>> a,
                                 std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) < 1e-14) {
      throw std::runtime_error("solve_linear: singular system");
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = a[row][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t row = n; row-- > 0;) {
    double acc = b[row];
    for (std::size_t k = row + 1; k < n; ++k) acc -= a[row][k] * x[k];
    x[row] = acc / a[row][row];
  }
  return x;
}

}  // namespace

ReflectingChain::ReflectingChain(std::size_t n) : station_count(n) {
  if (n < 3) {
    throw std::invalid_argument(
        "ReflectingChain: at least 3 stations required");
  }
}

std::vector<std::vector<double>> transition_matrix(
    const ReflectingChain& chain) {
  const std::size_t n = chain.station_count;
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
  p[0][1] = 1.0;
  p[n - 1][n - 2] = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    p[i][i - 1] = 0.5;
    p[i][i + 1] = 0.5;
  }
  return p;
}

std::vector<double> stationary_distribution(const ReflectingChain& chain) {
  const std::size_t n = chain.station_count;
  const auto p = transition_matrix(chain);
  // Balance equations (P^T - I) pi = 0 for the first n-1 stations, with the
  // last row swapped for sum(pi) = 1.
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  std::vector<double> b(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) a[j][i] = p[i][j];
    a[j][j] -= 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) a[n - 1][i] = 1.0;
  b[n - 1] = 1.0;
  return solve_linear(std::move(a), std::move(b));
}

std::vector<double> closed_form_stationary(const ReflectingChain& chain) {
  const std::size_t n = chain.station_count;
  const double end = 1.0 / (2.0 * static_cast<double>(n) - 2.0);
  const double interior = 1.0 / (static_cast<double>(n) - 1.0);
  std::vector<double> pi(n, interior);
  pi.front() = end;
  pi.back() = end;
  return pi;
}

std::pair<double, double> origin_posterior(const ReflectingChain& chain,
                                           std::size_t destination) {
  const std::size_t n = chain.station_count;
  if (destination < 2 || destination > n - 1) {
    throw std::invalid_argument(
        "origin_posterior: destination must be an interior station");
  }
  const auto pi = stationary_distribution(chain);
  const auto p = transition_matrix(chain);
  const std::size_t d = destination - 1;  // to 0-based
  const double from_west = pi[d - 1] * p[d - 1][d];
  const double from_east = pi[d + 1] * p[d + 1][d];
  const double total = from_west + from_east;
  return {from_west / total, from_east / total};
}

std::vector<std::size_t> wake_filter(const ReflectingChain& chain,
                                     std::size_t min_end_distance) {
  const std::size_t n = chain.station_count;
  std::vector<std::size_t> eligible;
  for (std::size_t d = 1; d <= n; ++d) {
    const std::size_t to_west_end = d - 1;
    const std::size_t to_east_end = n - d;
    if (to_west_end >= min_end_distance && to_east_end >= min_end_distance) {
      eligible.push_back(d);
    }
  }
  if (eligible.empty()) {
    throw std::invalid_argument(
        "wake_filter: no station is that far from both ends");
  }
  return eligible;
}

}  // namespace coinguess
